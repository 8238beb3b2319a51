#pragma once

#include <string>
#include <string_view>

#include "ncstree/hopf_gl.hpp"
#include "ncstree/lincomb.hpp"
#include "ncstree/trees.hpp"

namespace ncstree {

/// Element of the Connes-Kreimer algebra: rational combination of forests.
using CKVector = LinearCombination<Forest>;
using CKTensor = TensorCombination<Forest>;

CKVector ck_unit();
CKVector ck_product(const CKVector& a, const CKVector& b);
/// T # 1 + sum over admissible cuts of P_C # R_C, extended multiplicatively.
CKTensor ck_coproduct(const Forest& forest);
CKTensor ck_coproduct(const CKVector& a);
Rational ck_counit(const CKVector& a);
CKVector ck_antipode(const Forest& forest);
CKVector ck_antipode(const CKVector& a);
CKTensor ck_tensor_product(const CKTensor& a, const CKTensor& b);

/// alpha(T) if T is B+(F), otherwise 0, extended bilinearly.
Rational pairing(const CanonicalTree& tree, const Forest& forest);
Rational pairing(const GLVector& x, const CKVector& c);
/// <x1 # x2, c1 # c2> = <x1, c1> <x2, c2>.
Rational pairing(const GLTensor& x, const CKTensor& c);

/// Forests print in brackets, e.g. `2*[(1) (1)] - 1*[]`.
std::string format_ck(const CKVector& a);
/// Items are `[tree*]` or a run of tree literals; a bare coefficient is a multiple of the empty forest.
CKVector parse_ck(std::string_view text);
std::string format_ck_tensor(const CKTensor& a);

} // namespace ncstree
