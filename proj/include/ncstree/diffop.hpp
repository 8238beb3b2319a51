#pragma once

#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "ncstree/ncseries.hpp"

namespace ncstree {

/// The derivation [v(z) d/dz] sending z_i to v_i and acting by the Leibniz rule.
struct Derivation {
    SeriesVector coefficients;

    Derivation() = default;
    explicit Derivation(SeriesVector v) : coefficients(std::move(v)) {}
    const TruncationSpec& spec() const { return coefficients.spec(); }
    friend bool operator==(const Derivation&, const Derivation&) = default;
};

NCSeries apply_derivation(const Derivation& delta, const NCSeries& u);

/// Sum over injective assignments of the derivations to letter positions of
/// each word, every assigned position replaced by the matching coefficient
/// component. Derivations never act on each other's output.
NCSeries bplus_apply(const std::vector<Derivation>& deltas, const NCSeries& u);

class OperatorMatrix;

/// Differential operator as an expression tree, evaluated lazily.
class DiffOperator {
public:
    enum class Kind { Identity, Deriv, BPlus, Compose, LinComb };

    /// The identity operator.
    DiffOperator();
    static DiffOperator derivation(Derivation delta);
    static DiffOperator bplus(std::vector<Derivation> deltas);
    /// ops[0] after ops[1] after ...
    static DiffOperator compose(std::vector<DiffOperator> ops);
    static DiffOperator lincomb(std::vector<std::pair<TPoly, DiffOperator>> terms);

    Kind kind() const { return node_->kind; }

    NCSeries apply(const NCSeries& u) const;
    SeriesVector apply(const SeriesVector& u) const;
    OperatorMatrix materialize(const TruncationSpec& spec) const;

private:
    struct Node {
        Kind kind = Kind::Identity;
        std::vector<Derivation> derivations;
        std::vector<DiffOperator> operators;
        std::vector<TPoly> weights;
    };
    explicit DiffOperator(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// phi applied to every coefficient of delta.
Derivation collapse(const DiffOperator& phi, const Derivation& delta);

/// Every word of length <= z_degree, in normal form for the truncation.
std::vector<Word> monomial_basis(const TruncationSpec& spec);

/// K[t]-linear operator recorded by its images of all monomials of length <= D.
/// Equality of operators means equality of these images.
class OperatorMatrix {
public:
    OperatorMatrix() = default;
    static OperatorMatrix identity(const TruncationSpec& spec);
    static OperatorMatrix zero(const TruncationSpec& spec);
    static OperatorMatrix from_function(const TruncationSpec& spec, const std::function<NCSeries(const NCSeries&)>& f);

    const TruncationSpec& spec() const { return spec_; }
    const std::map<Word, NCSeries>& images() const { return images_; }
    const NCSeries& image(const Word& w) const { return images_.at(w); }

    NCSeries apply(const NCSeries& u) const;
    SeriesVector apply(const SeriesVector& u) const;

    OperatorMatrix& operator+=(const OperatorMatrix& o);
    OperatorMatrix& operator-=(const OperatorMatrix& o);
    OperatorMatrix& operator*=(const Rational& c);
    friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
    friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
    friend OperatorMatrix operator*(const Rational& c, OperatorMatrix a) { return a *= c; }
    /// Composition: (a * b)(u) = a(b(u)).
    friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
    friend bool operator==(const OperatorMatrix&, const OperatorMatrix&) = default;

    OperatorMatrix times(const TPoly& p) const;
    /// Operator coefficient of t^k.
    OperatorMatrix t_coefficient(unsigned k) const;
    /// A(-t).
    OperatorMatrix negate_t() const;
    OperatorMatrix t_derivative() const;
    bool is_zero() const;
    /// Every image of a word w only contains words of length |w| + m (truncation aside).
    bool raises_degree_by(unsigned m) const;

private:
    template <class F>
    OperatorMatrix map_images(F&& f) const;

    TruncationSpec spec_;
    std::map<Word, NCSeries> images_;
};

/// exp(A) = sum A^k/k! for A with zero constant t-term (t-adically finite).
OperatorMatrix operator_exp(const OperatorMatrix& a);
/// log(B) = sum (-1)^{k+1} (B-1)^k / k for B with B(0) = 1.
OperatorMatrix operator_log(const OperatorMatrix& b);

} // namespace ncstree
