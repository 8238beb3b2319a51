#include "ncstree/tree_formulas.hpp"

#include <algorithm>

#include "ncstree/errors.hpp"
#include "ncstree/orderpoly.hpp"

namespace ncstree {

TreeCalculus::TreeCalculus(Automorphism f) : f_(std::move(f)) { f_.validate(); }

SeriesVector TreeCalculus::p_tree(const CanonicalTree& tree) {
    if (tree.label() == 0) {
        throw InvalidLabel("P_T needs a tree with a labeled root");
    }
    {
        std::lock_guard lock(mutex_);
        if (auto it = p_cache_.find(tree); it != p_cache_.end()) {
            return it->second;
        }
    }
    SeriesVector h = f_.component(tree.label());
    SeriesVector out = SeriesVector::zero(f_.spec);
    if (!h.is_zero()) {
        std::vector<Derivation> branches;
        bool vanishes = false;
        for (const auto& c : tree.children()) {
            SeriesVector pc = p_tree(c);
            vanishes = vanishes || pc.is_zero();
            branches.emplace_back(std::move(pc));
        }
        if (!vanishes) {
            for (std::size_t i = 0; i < h.size(); ++i) {
                out[i] = bplus_apply(branches, h[i]);
            }
        }
    }
    std::lock_guard lock(mutex_);
    p_cache_.emplace(tree, out);
    return out;
}

DiffOperator TreeCalculus::d_tree(const CanonicalTree& tree) {
    if (tree.label() != 0) {
        throw InvalidLabel("D_T needs a tree with root label 0");
    }
    std::vector<Derivation> branches;
    for (const auto& c : tree.children()) {
        branches.emplace_back(p_tree(c));
    }
    return DiffOperator::bplus(std::move(branches));
}

DiffOperator TreeCalculus::apply_a(const GLVector& x) {
    std::vector<std::pair<TPoly, DiffOperator>> terms;
    for (const auto& [t, c] : x) {
        terms.emplace_back(TPoly::constant(c), d_tree(t));
    }
    return DiffOperator::lincomb(std::move(terms));
}

OperatorMatrix TreeCalculus::apply_a_series(const std::vector<GLVector>& coefficients) {
    std::vector<std::pair<TPoly, DiffOperator>> terms;
    for (std::size_t k = 0; k < coefficients.size() && k <= f_.spec.t_order; ++k) {
        for (const auto& [t, c] : coefficients[k]) {
            terms.emplace_back(TPoly::monomial(c, static_cast<unsigned>(k)), d_tree(t));
        }
    }
    return DiffOperator::lincomb(std::move(terms)).materialize(f_.spec);
}

SeriesVector TreeCalculus::u_map(const LinearCombination<CanonicalTree>& x) {
    SeriesVector out = SeriesVector::zero(f_.spec);
    for (const auto& [t, c] : x) {
        out += c * p_tree(t);
    }
    return out;
}

const std::vector<CanonicalTree>& TreeCalculus::trees() {
    std::lock_guard lock(mutex_);
    if (!trees_ready_) {
        auto labels = f_.labels();
        if (!labels.empty()) {
            trees_ = enumerate_trees(labels, f_.spec.t_order);
        }
        trees_ready_ = true;
    }
    return trees_;
}

namespace {

Rational inverse_aut(const CanonicalTree& t) { return Rational(1) / Rational(t.aut_order()); }

} // namespace

SeriesVector TreeCalculus::tree_inverse() {
    SeriesVector out = SeriesVector::identity(f_.spec);
    for (const auto& t : trees()) {
        out += p_tree(t).times(TPoly::monomial(inverse_aut(t), t.weight()));
    }
    return out;
}

SeriesVector TreeCalculus::d_log() {
    SeriesVector out = SeriesVector::zero(f_.spec);
    for (const auto& t : trees()) {
        out -= p_tree(t).times(TPoly::monomial(varphi(t) * inverse_aut(t), t.weight()));
    }
    return out;
}

SeriesVector TreeCalculus::flow(const Rational& s) {
    SeriesVector out = SeriesVector::identity(f_.spec);
    for (const auto& t : trees()) {
        Rational c = order_polynomial(t)(-s) * inverse_aut(t);
        out += p_tree(t).times(TPoly::monomial(c, t.weight()));
    }
    return out;
}

std::vector<SeriesVector> TreeCalculus::flow_formal() {
    std::vector<SeriesVector> out{SeriesVector::identity(f_.spec)};
    for (const auto& t : trees()) {
        PolyS omega = order_polynomial(t).negate_argument();
        SeriesVector p = p_tree(t);
        if (p.is_zero()) {
            continue;
        }
        for (int j = 0; j <= omega.degree(); ++j) {
            Rational c = omega.coefficient(static_cast<std::size_t>(j)) * inverse_aut(t);
            if (c == 0) {
                continue;
            }
            while (out.size() <= static_cast<std::size_t>(j)) {
                out.push_back(SeriesVector::zero(f_.spec));
            }
            out[j] += p.times(TPoly::monomial(c, t.weight()));
        }
    }
    return out;
}

SeriesVector exp_derivation(const SeriesVector& a) {
    const TruncationSpec& spec = a.spec();
    OperatorMatrix op = operator_exp(DiffOperator::derivation(Derivation(a)).materialize(spec));
    return op.apply(SeriesVector::identity(spec));
}

Automorphism separating_automorphism(const CanonicalTree& tree, unsigned alpha, const std::set<unsigned>& labels,
                                     unsigned max_weight) {
    if (tree.label() == 0) {
        throw InvalidLabel("separating automorphisms are built for trees with a labeled root");
    }
    if (alpha < 1) {
        throw InvalidAutomorphism("alpha must be at least 1");
    }
    std::set<unsigned> all_labels = labels;
    FlatTree flat(tree);
    for (unsigned l : flat.label) {
        all_labels.insert(l);
    }
    const unsigned n = static_cast<unsigned>(flat.size());
    unsigned d = alpha;
    for (const auto& kids : flat.children) {
        d = std::max<unsigned>(d, static_cast<unsigned>(kids.size()));
    }
    // P_T' is homogeneous of degree v(T') d - (v(T') - 1); keep every tree
    // up to max_weight below the z-degree bound so vanishing is exact.
    unsigned weight_bound = std::max(max_weight, tree.weight());
    unsigned max_vertices = std::max(n, weight_bound / *all_labels.begin());
    Automorphism out;
    out.alpha = alpha;
    out.spec.variables = n + 1;
    out.spec.t_order = weight_bound;
    out.spec.z_degree = std::max(d, max_vertices * d - (max_vertices - 1));
    out.spec.commutative = false;
    const char pad = static_cast<char>(n);
    for (unsigned i = 0; i < n; ++i) {
        Word w;
        for (int c : flat.children[i]) {
            w += static_cast<char>(c);
        }
        w.append(d - w.size(), pad);
        auto [it, inserted] = out.components.try_emplace(flat.label[i], SeriesVector::zero(out.spec));
        it->second[i].add_term(w, TPoly::constant(1));
    }
    out.validate();
    return out;
}

} // namespace ncstree
