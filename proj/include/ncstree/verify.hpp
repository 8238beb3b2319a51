#pragma once

#include <set>
#include <vector>

#include "ncstree/automorphism.hpp"
#include "ncstree/diffop.hpp"
#include "ncstree/ncs_system.hpp"

namespace ncstree {

/// Associativity, coassociativity, counit, antipode and bialgebra laws on the
/// basis of H_GL (trees) up to max_weight.
CheckReport verify_hopf_gl(const std::set<unsigned>& labels, unsigned max_weight);
/// The same laws on the forest basis of H_CK.
CheckReport verify_hopf_ck(const std::set<unsigned>& labels, unsigned max_weight);
/// <x y, c> = <x (x) y, Delta c> and <Delta x, c (x) d> = <x, c d> on basis elements.
CheckReport verify_duality(const std::set<unsigned>& labels, unsigned max_weight);

/// The r-fold product of d~ = sum theta_T t^|T| V_T equals the sum over trees
/// T and chains of r-1 admissible cuts of the product of theta over the r
/// resulting pieces, times V_T, through the given weight.
CheckReport verify_key_lemma(const std::set<unsigned>& labels, unsigned max_weight, unsigned r);

/// A(x y) = A(x) A(y) on basis pairs with |x| + |y| <= max_weight.
CheckReport verify_a_homomorphism(const Automorphism& f, unsigned max_weight);
/// A(S) P_T = U(S acting on T) for basis S and trees T of weight <= max_weight.
CheckReport verify_cd1(const Automorphism& f, unsigned max_weight);
/// phi B+(d_1..d_m) = B+(phi, d_1..d_m) + sum_i B+(.., phi |> d_i, ..) as operators.
bool check_bplus_leibniz(const Derivation& phi, const std::vector<Derivation>& deltas);
/// For F with every H_[m] homogeneous of degree m + 1, the t^m coefficient of
/// f(t) raises z-degree by exactly m, m <= max_weight. Throws InvalidAutomorphism
/// when F is not of that shape.
CheckReport verify_graded(const Automorphism& f, unsigned max_weight);

} // namespace ncstree
