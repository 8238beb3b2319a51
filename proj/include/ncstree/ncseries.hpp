#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncstree/rational.hpp"

namespace ncstree {

/// Finite model of K[[t]]<<z_1..z_n>>: words longer than z_degree and powers of t
/// above t_order are dropped.
struct TruncationSpec {
    unsigned z_degree = 4;
    unsigned t_order = 4;
    unsigned variables = 1;
    bool commutative = false;

    friend bool operator==(const TruncationSpec&, const TruncationSpec&) = default;
};

/// Polynomial in t, stored densely; kept at degree <= t_order by its users.
class TPoly {
public:
    TPoly() = default;
    explicit TPoly(std::vector<Rational> coeffs);
    static TPoly constant(const Rational& c) { return TPoly({c}); }
    /// c t^k
    static TPoly monomial(const Rational& c, unsigned k);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    /// Lowest power with nonzero coefficient; nullopt for zero.
    std::optional<unsigned> low_degree() const;
    Rational coefficient(unsigned k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    TPoly truncated(unsigned order) const;
    /// Product truncated at degree `order`.
    TPoly times(const TPoly& o, unsigned order) const;
    TPoly derivative() const;
    /// p(-t)
    TPoly negate_argument() const;

    TPoly& operator+=(const TPoly& o);
    TPoly& operator-=(const TPoly& o);
    TPoly& operator*=(const Rational& c);
    friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
    friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
    friend TPoly operator*(const Rational& c, TPoly a) { return a *= c; }
    friend bool operator==(const TPoly&, const TPoly&) = default;

    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// A word over the letters 0..n-1 (letter i stands for z_{i+1}); sorted in commutative mode.
using Word = std::string;

/// Truncated series: finite map from words to t-polynomials, no zero entries.
class NCSeries {
public:
    NCSeries() = default;
    explicit NCSeries(const TruncationSpec& spec) : spec_(spec) {}

    static NCSeries constant(const TruncationSpec& spec, const Rational& c);
    /// z_{index+1}
    static NCSeries variable(const TruncationSpec& spec, unsigned index);
    static NCSeries monomial(const TruncationSpec& spec, Word word, const TPoly& coeff);

    const TruncationSpec& spec() const { return spec_; }
    const std::map<Word, TPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    TPoly coefficient(const Word& word) const;

    /// Adds c * word after normalizing and truncating.
    void add_term(Word word, const TPoly& coeff);

    NCSeries& operator+=(const NCSeries& o);
    NCSeries& operator-=(const NCSeries& o);
    NCSeries& operator*=(const Rational& c);
    friend NCSeries operator+(NCSeries a, const NCSeries& b) { return a += b; }
    friend NCSeries operator-(NCSeries a, const NCSeries& b) { return a -= b; }
    friend NCSeries operator-(NCSeries a) { return a *= Rational(-1); }
    friend NCSeries operator*(const Rational& c, NCSeries a) { return a *= c; }
    friend NCSeries operator*(const NCSeries& a, const NCSeries& b);
    /// Multiplies every coefficient by p (truncated).
    NCSeries times(const TPoly& p) const;
    friend bool operator==(const NCSeries& a, const NCSeries& b);

    /// Least z-degree of a nonzero term; nullopt stands for infinity.
    std::optional<unsigned> order() const;
    /// Least t-degree of a nonzero term; nullopt stands for infinity.
    std::optional<unsigned> t_order() const;

    /// Coefficient of t^k as a t-free series.
    NCSeries t_coefficient(unsigned k) const;
    NCSeries t_derivative() const;
    /// u(-t, z)
    NCSeries negate_t() const;
    /// Re-truncates into `spec`, which must have the same variable count and mode.
    NCSeries retruncated(const TruncationSpec& spec) const;
    /// Words of exactly this length.
    NCSeries homogeneous_part(unsigned degree) const;

    std::string to_string(const std::vector<std::string>& names = {}) const;

private:
    void require_same(const NCSeries& o) const;
    TruncationSpec spec_;
    std::map<Word, TPoly> terms_;
};

/// n components sharing one truncation; component i is the image of z_{i+1}.
struct SeriesVector {
    std::vector<NCSeries> components;

    SeriesVector() = default;
    explicit SeriesVector(std::vector<NCSeries> c) : components(std::move(c)) {}
    static SeriesVector zero(const TruncationSpec& spec);
    static SeriesVector identity(const TruncationSpec& spec);

    std::size_t size() const { return components.size(); }
    const TruncationSpec& spec() const { return components.front().spec(); }
    NCSeries& operator[](std::size_t i) { return components[i]; }
    const NCSeries& operator[](std::size_t i) const { return components[i]; }
    bool is_zero() const;

    SeriesVector& operator+=(const SeriesVector& o);
    SeriesVector& operator-=(const SeriesVector& o);
    SeriesVector& operator*=(const Rational& c);
    friend SeriesVector operator+(SeriesVector a, const SeriesVector& b) { return a += b; }
    friend SeriesVector operator-(SeriesVector a, const SeriesVector& b) { return a -= b; }
    friend SeriesVector operator*(const Rational& c, SeriesVector a) { return a *= c; }
    friend bool operator==(const SeriesVector&, const SeriesVector&) = default;

    SeriesVector times(const TPoly& p) const;
    SeriesVector t_coefficient(unsigned k) const;
    SeriesVector t_derivative() const;
    SeriesVector negate_t() const;
};

/// Replaces every letter z_i of u by F_i. Requires F_i to have no constant term
/// and every term of F_i - z_i to carry a positive power of t or z-degree >= 2.
NCSeries substitute(const NCSeries& u, const SeriesVector& f);
SeriesVector substitute(const SeriesVector& u, const SeriesVector& f);
/// Throws InvalidAutomorphism if `f` violates the substitution precondition.
void check_substitution(const SeriesVector& f);

/// Default variable names z1..zn.
std::vector<std::string> default_names(unsigned n);

/// Parses `series ::= term (('+'|'-') term)*`. Unknown names raise ParseError.
NCSeries parse_series(std::string_view text, const TruncationSpec& spec, const std::vector<std::string>& names = {});

} // namespace ncstree
