#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "ncstree/rational.hpp"
#include "ncstree/trees.hpp"

namespace ncstree {

/// Polynomial in one variable s with exact rational coefficients.
class PolyS {
public:
    PolyS() = default;
    explicit PolyS(std::vector<Rational> coeffs);
    static PolyS constant(const Rational& c);
    /// The monomial s.
    static PolyS s();

    /// Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    Rational coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    Rational operator()(const Rational& s) const;
    /// p(-s).
    PolyS negate_argument() const;
    /// p(s + c).
    PolyS shift(const Rational& c) const;
    /// p(s) - p(s - 1).
    PolyS nabla() const;

    PolyS& operator+=(const PolyS& o);
    PolyS& operator-=(const PolyS& o);
    PolyS& operator*=(const Rational& c);
    friend PolyS operator+(PolyS a, const PolyS& b) { return a += b; }
    friend PolyS operator-(PolyS a, const PolyS& b) { return a -= b; }
    friend PolyS operator*(const PolyS& a, const PolyS& b);
    friend PolyS operator*(const Rational& c, PolyS p) { return p *= c; }
    friend bool operator==(const PolyS&, const PolyS&) = default;

    /// Highest degree first, e.g. "1/2*s^2 + 1/2*s"; zero prints as "0".
    std::string to_string() const;

    /// The unique polynomial of degree < values.size() with p(i) = values[i].
    static PolyS interpolate(const std::vector<Rational>& values);

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Number of maps from the forest poset into the chain 1 < ... < s that weakly
/// increase from each root towards the leaves.
PolyS order_polynomial(const Forest& forest);
PolyS order_polynomial(const CanonicalTree& tree);
/// Same count with values strictly increasing along every edge.
PolyS strict_order_polynomial(const Forest& forest);
PolyS strict_order_polynomial(const CanonicalTree& tree);

/// Memo table for the theta constants. Thread-safe.
class ThetaTable {
public:
    /// Coefficient of s in the order polynomial of B-(tree).
    Rational theta(const CanonicalTree& tree);
    /// theta(B+(tree)).
    Rational varphi(const CanonicalTree& tree) { return theta(b_plus(Forest({tree}))); }

    /// The inductive characterization through single-edge cut chains; an
    /// independent route to the same numbers.
    Rational theta_by_recursion(const CanonicalTree& tree);

    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<CanonicalTree, Rational> direct_;
    std::map<CanonicalTree, Rational> recursive_;
};

/// Process-wide table.
ThetaTable& theta_table();

inline Rational theta(const CanonicalTree& tree) { return theta_table().theta(tree); }
inline Rational varphi(const CanonicalTree& tree) { return theta_table().varphi(tree); }

/// Right side of the expansion of nabla Omega(T, s) for primitive T as a sum
/// over descending chains of single edges weighted by theta of the pieces.
PolyS nabla_expansion(const CanonicalTree& tree);

} // namespace ncstree
