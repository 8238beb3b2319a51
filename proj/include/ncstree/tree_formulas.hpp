#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "ncstree/automorphism.hpp"
#include "ncstree/diffop.hpp"
#include "ncstree/hopf_gl.hpp"
#include "ncstree/trees.hpp"

namespace ncstree {

/// Tree-indexed quantities attached to one automorphism: the series P_T, the
/// operators D_T and the tree expansions built from them. P_T is memoized.
class TreeCalculus {
public:
    explicit TreeCalculus(Automorphism f);

    const Automorphism& automorphism() const { return f_; }
    const TruncationSpec& spec() const { return f_.spec; }

    /// P_T for a tree with a nonzero root label; zero when a label has no component.
    SeriesVector p_tree(const CanonicalTree& tree);
    /// D_T for a tree with root label 0: identity for the singleton, else B+ of the branch derivations.
    DiffOperator d_tree(const CanonicalTree& tree);
    /// Linear extension of T -> D_T.
    DiffOperator apply_a(const GLVector& x);
    /// sum_k t^k A(x_k), materialized.
    OperatorMatrix apply_a_series(const std::vector<GLVector>& coefficients);
    /// Linear extension of T -> P_T over trees with labeled roots.
    SeriesVector u_map(const LinearCombination<CanonicalTree>& x);

    /// Trees over the automorphism's labels with weight <= t_order.
    const std::vector<CanonicalTree>& trees();

    /// z + sum t^|T| P_T / alpha(T).
    SeriesVector tree_inverse();
    /// a_t = - sum t^|T| varphi_T P_T / alpha(T); exp([a d/dz]) z = F_t.
    SeriesVector d_log();
    /// z + sum t^|T| Omega(T, -s) P_T / alpha(T).
    SeriesVector flow(const Rational& s);
    /// The flow with formal s: entry j is the coefficient of s^j.
    std::vector<SeriesVector> flow_formal();
    /// m-th composition power, the flow at s = m.
    SeriesVector mth_power(long m) { return flow(Rational(m)); }

private:
    Automorphism f_;
    std::mutex mutex_;
    std::map<CanonicalTree, SeriesVector> p_cache_;
    std::vector<CanonicalTree> trees_;
    bool trees_ready_ = false;
};

/// exp([a d/dz]) applied to z.
SeriesVector exp_derivation(const SeriesVector& a);

/// F_t built for tree T so that P_T is nonzero and P_T' vanishes for every
/// other tree of weight >= |T| over the labels `labels`. Vertices are numbered
/// in preorder, vertex i owns variable z_i (the edge above it) and component i,
/// and z_{n+1} with n = v(T) pads everything to degree d.
Automorphism separating_automorphism(const CanonicalTree& tree, unsigned alpha, const std::set<unsigned>& labels,
                                     unsigned max_weight);

} // namespace ncstree
