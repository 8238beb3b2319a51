#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ncstree/automorphism.hpp"
#include "ncstree/diffop.hpp"
#include "ncstree/hopf_gl.hpp"
#include "ncstree/lincomb.hpp"
#include "ncstree/ncs_system.hpp"

namespace ncstree {

/// Word of generator indices; Lambda_{a1} ... Lambda_{ak} for NSym elements.
using Composition = std::vector<unsigned>;

/// Element of NSym written in Lambda-words. The empty word is the unit.
using NSymElement = LinearCombination<Composition>;
using NSymTensor = TensorCombination<Composition>;

NSymElement nsym_unit();
NSymElement nsym_lambda(unsigned m);
/// Concatenation product.
NSymElement nsym_product(const NSymElement& a, const NSymElement& b);
/// Largest weight (sum of indices) in the support; 0 for the zero element.
unsigned nsym_weight(const NSymElement& x);
/// Part of weight exactly w.
NSymElement nsym_homogeneous(const NSymElement& x, unsigned w);

/// `1*L1.L1 - 1*L2`; the empty word prints as `1`. `symbol` names the generators.
std::string format_nsym(const NSymElement& x, std::string_view symbol = "L");
NSymElement parse_nsym(std::string_view text);
std::string format_nsym_tensor(const NSymTensor& x);

struct NSymHost {
    using value_type = NSymElement;
    NSymElement unit() const { return nsym_unit(); }
    NSymElement zero() const { return {}; }
    NSymElement add(const NSymElement& a, const NSymElement& b) const { return a + b; }
    NSymElement mul(const NSymElement& a, const NSymElement& b) const { return nsym_product(a, b); }
    NSymElement scale(const Rational& c, const NSymElement& a) const { return c * a; }
    bool equal(const NSymElement& a, const NSymElement& b) const { return a == b; }
};

struct GLHost {
    using value_type = GLVector;
    GLVector unit() const { return gl_unit(); }
    GLVector zero() const { return {}; }
    GLVector add(const GLVector& a, const GLVector& b) const { return a + b; }
    GLVector mul(const GLVector& a, const GLVector& b) const { return gl_product(a, b); }
    GLVector scale(const Rational& c, const GLVector& a) const { return c * a; }
    bool equal(const GLVector& a, const GLVector& b) const { return a == b; }
};

/// t-free operators on K<<z>> truncated at z-degree D; the product is composition.
struct OperatorHost {
    using value_type = OperatorMatrix;
    TruncationSpec spec;
    OperatorMatrix unit() const { return OperatorMatrix::identity(spec); }
    OperatorMatrix zero() const { return OperatorMatrix::zero(spec); }
    OperatorMatrix add(const OperatorMatrix& a, const OperatorMatrix& b) const { return a + b; }
    OperatorMatrix mul(const OperatorMatrix& a, const OperatorMatrix& b) const { return a * b; }
    OperatorMatrix scale(const Rational& c, const OperatorMatrix& a) const { return c * a; }
    bool equal(const OperatorMatrix& a, const OperatorMatrix& b) const { return a == b; }
};

/// S_m, Phi_m, Psi_m and Xi_m in Lambda-words, index m = 0..max_weight (index 0 unused except S_0 = 1).
struct NSymBases {
    unsigned max_weight = 0;
    std::vector<NSymElement> S, Phi, Psi, Xi;
};

/// Order-by-order solution with f = lambda(t): S from lambda(-t) sigma(t) = 1,
/// Phi from sigma = exp(sum t^m Phi_m / m), Psi from dsigma/dt = sigma psi and
/// Xi from dsigma/dt = xi sigma. Tables are cached and extended on demand.
NSymBases solve_bases(unsigned max_weight);

/// The universal system (lambda, sigma, sum t^m Phi_m/m, psi, xi) through t^n.
NCSTuple<NSymElement> universal_system(unsigned n);

/// Rewrites a Lambda-word element in Psi-words, and back.
NSymElement lambda_to_psi(const NSymElement& x);
NSymElement psi_to_lambda(const NSymElement& psi_words);

/// Coproduct from Delta(Lambda_m) = sum_{i+j=m} Lambda_i (x) Lambda_j.
NSymTensor nsym_coproduct(const NSymElement& x);
/// Coproduct computed with every Psi_m primitive; a cross-check of the above.
NSymTensor nsym_coproduct_via_psi(const NSymElement& x);
/// S(Psi_m) = -Psi_m extended as an anti-morphism.
NSymElement nsym_antipode(const NSymElement& x);
Rational nsym_counit(const NSymElement& x);

/// The tree system over H_GL for labels W through weight n:
///   f~ = sum over shrubs (-1)^{o(T)+|T|} t^|T| V_T
///   g~ = sum over all trees t^|T| V_T
///   d~ = sum over primitives theta_T t^|T| V_T
///   h~ = sum over chains beta_T t^{|T|-1} V_T
///   m~ = sum over primitives gamma_T t^{|T|-1} V_T
/// with V_T = T / alpha(T).
NCSTuple<GLVector> omega_trees(const std::set<unsigned>& labels, unsigned n);
/// 1 + sum_d (-1)^d/d! B+(kappa(-t)^d), kappa(t) = sum_m t^m (singleton m); must equal f~.
TSeries<GLVector> f_tree_by_kappa(const std::set<unsigned>& labels, unsigned n);
/// beta_T and gamma_T for a tree with root label 0.
unsigned beta_constant(const CanonicalTree& tree);
unsigned gamma_constant(const CanonicalTree& tree);

/// Lambda_m -> coefficient of t^m in f~, extended multiplicatively.
/// Throws WeightOverflow when x has weight above n.
GLVector specialize_t(const std::set<unsigned>& labels, const NSymElement& x, unsigned n);
/// Lambda_m -> coefficient of t^m in f(t) of the automorphism, extended multiplicatively.
OperatorMatrix specialize_s(const Automorphism& f, const NSymElement& x);

/// Omega_F: the operator series split into t-free coefficients.
NCSTuple<OperatorMatrix> omega_map(const Automorphism& f);

/// S_F(Lambda_m) = A_F(T(Lambda_m)) for m <= max_weight.
CheckReport verify_cd2(const Automorphism& f, unsigned max_weight);
/// A applied to the tree system equals Omega_F coefficientwise: f, g and d
/// through t^N and h, m through t^(N-1), N the map's t-order.
CheckReport verify_tree_system_image(const Automorphism& f);

struct RankResult {
    std::size_t rank = 0;
    std::size_t expected = 0;
};
/// Rank of T on NSym_[m] in the tree basis of weight m, labels 1..m.
RankResult injectivity_rank(unsigned m);

} // namespace ncstree
