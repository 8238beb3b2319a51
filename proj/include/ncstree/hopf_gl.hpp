#pragma once

#include <string>
#include <string_view>

#include "ncstree/lincomb.hpp"
#include "ncstree/trees.hpp"

namespace ncstree {

/// Element of the Grossman-Larson algebra: rational combination of trees with root label 0.
using GLVector = LinearCombination<CanonicalTree>;
using GLTensor = TensorCombination<CanonicalTree>;

/// The unit, the singleton with label 0.
GLVector gl_unit();
/// T / alpha(T).
GLVector gl_scaled_basis(const CanonicalTree& tree);

/// Graft the root branches of `a` onto the vertices of `b` in every possible way.
GLVector gl_product(const CanonicalTree& a, const CanonicalTree& b);
GLVector gl_product(const GLVector& a, const GLVector& b);
/// Splits the root branches in all 2^m ways.
GLTensor gl_coproduct(const CanonicalTree& tree);
GLTensor gl_coproduct(const GLVector& a);
Rational gl_counit(const GLVector& a);
GLVector gl_antipode(const CanonicalTree& tree);
GLVector gl_antipode(const GLVector& a);

/// Module action on trees with a labeled root: the branches of each term of
/// `a` are grafted onto the vertices of `tree`.
LinearCombination<CanonicalTree> gl_act_on_tree(const GLVector& a, const CanonicalTree& tree);

/// Factorwise product of tensors.
GLTensor gl_tensor_product(const GLTensor& a, const GLTensor& b);

/// Terms of weight at most `max_weight`.
GLVector gl_truncate(const GLVector& a, unsigned max_weight);

std::string format_gl(const GLVector& a);
/// `term (('+'|'-') term)*`, where a term is a coefficient, a tree literal with
/// root label 0, or `coeff*tree`.
GLVector parse_gl(std::string_view text);
std::string format_gl_tensor(const GLTensor& a);

} // namespace ncstree
