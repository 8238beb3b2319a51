#include "ncstree/verify.hpp"

#include <functional>
#include <tuple>

#include "ncstree/errors.hpp"
#include "ncstree/hopf_ck.hpp"
#include "ncstree/hopf_gl.hpp"
#include "ncstree/orderpoly.hpp"
#include "ncstree/tree_formulas.hpp"

namespace ncstree {

namespace {

// Basis-level description of a Hopf algebra; everything else is extended linearly.
template <class Key>
struct BasisHopf {
    using Vec = LinearCombination<Key>;
    using Ten = TensorCombination<Key>;
    std::vector<Key> basis;
    std::function<unsigned(const Key&)> weight;
    std::function<Vec(const Key&, const Key&)> product;
    std::function<Ten(const Key&)> coproduct;
    std::function<Rational(const Key&)> counit;
    std::function<Vec(const Key&)> antipode;
    std::function<std::string(const Key&)> name;
    Key unit;

    Vec mul(const Vec& a, const Vec& b) const {
        Vec out;
        for (const auto& [x, cx] : a) {
            for (const auto& [y, cy] : b) {
                out.add(product(x, y), cx * cy);
            }
        }
        return out;
    }
    Ten delta(const Vec& a) const {
        Ten out;
        for (const auto& [x, c] : a) {
            out.add(coproduct(x), c);
        }
        return out;
    }
    Ten tensor_mul(const Ten& a, const Ten& b) const {
        Ten out;
        for (const auto& [x, cx] : a) {
            for (const auto& [y, cy] : b) {
                auto l = product(x.first, y.first);
                auto r = product(x.second, y.second);
                for (const auto& [u, cu] : l) {
                    for (const auto& [v, cv] : r) {
                        out.add({u, v}, cx * cy * cu * cv);
                    }
                }
            }
        }
        return out;
    }
};

template <class Key>
void check_hopf_laws(const BasisHopf<Key>& h, unsigned max_weight, CheckReport& report) {
    using Vec = LinearCombination<Key>;
    using Triple = LinearCombination<std::tuple<Key, Key, Key>>;
    for (const auto& a : h.basis) {
        for (const auto& b : h.basis) {
            if (h.weight(a) + h.weight(b) > max_weight) {
                continue;
            }
            Vec ab = h.product(a, b);
            report.record(h.delta(ab) == h.tensor_mul(h.coproduct(a), h.coproduct(b)),
                          "bialgebra law fails for " + h.name(a) + ", " + h.name(b));
            for (const auto& c : h.basis) {
                if (h.weight(a) + h.weight(b) + h.weight(c) > max_weight) {
                    continue;
                }
                report.record(h.mul(ab, Vec(c)) == h.mul(Vec(a), h.product(b, c)),
                              "associativity fails for " + h.name(a) + ", " + h.name(b) + ", " + h.name(c));
            }
        }
    }
    for (const auto& x : h.basis) {
        if (h.weight(x) > max_weight) {
            continue;
        }
        auto d = h.coproduct(x);
        Triple left;
        Triple right;
        Vec via_left;
        Vec via_right;
        Vec conv_left;
        Vec conv_right;
        for (const auto& [k, c] : d) {
            for (const auto& [kk, cc] : h.coproduct(k.first)) {
                left.add({kk.first, kk.second, k.second}, c * cc);
            }
            for (const auto& [kk, cc] : h.coproduct(k.second)) {
                right.add({k.first, kk.first, kk.second}, c * cc);
            }
            via_left.add(k.second, c * h.counit(k.first));
            via_right.add(k.first, c * h.counit(k.second));
            conv_left += c * h.mul(h.antipode(k.first), Vec(k.second));
            conv_right += c * h.mul(Vec(k.first), h.antipode(k.second));
        }
        std::string n = h.name(x);
        report.record(left == right, "coassociativity fails for " + n);
        report.record(via_left == Vec(x) && via_right == Vec(x), "counit law fails for " + n);
        Vec expected = h.counit(x) * Vec(h.unit);
        report.record(conv_left == expected && conv_right == expected, "antipode law fails for " + n);
    }
}

BasisHopf<CanonicalTree> gl_algebra(const std::set<unsigned>& labels, unsigned max_weight) {
    BasisHopf<CanonicalTree> h;
    h.basis = enumerate_gl_basis(labels, max_weight);
    h.weight = [](const CanonicalTree& t) { return t.weight(); };
    h.product = [](const CanonicalTree& a, const CanonicalTree& b) { return gl_product(a, b); };
    h.coproduct = [](const CanonicalTree& t) { return gl_coproduct(t); };
    h.counit = [](const CanonicalTree& t) { return t.is_singleton() ? Rational(1) : Rational(0); };
    h.antipode = [](const CanonicalTree& t) { return gl_antipode(t); };
    h.name = [](const CanonicalTree& t) { return t.to_string(); };
    h.unit = CanonicalTree();
    return h;
}

BasisHopf<Forest> ck_algebra(const std::set<unsigned>& labels, unsigned max_weight) {
    BasisHopf<Forest> h;
    h.basis = enumerate_forests(labels, max_weight);
    h.weight = [](const Forest& f) { return f.weight(); };
    h.product = [](const Forest& a, const Forest& b) { return CKVector(a * b); };
    h.coproduct = [](const Forest& f) { return ck_coproduct(f); };
    h.counit = [](const Forest& f) { return f.empty() ? Rational(1) : Rational(0); };
    h.antipode = [](const Forest& f) { return ck_antipode(f); };
    h.name = [](const Forest& f) { return "[" + f.to_string() + "]"; };
    h.unit = Forest();
    return h;
}

} // namespace

CheckReport verify_hopf_gl(const std::set<unsigned>& labels, unsigned max_weight) {
    CheckReport report;
    check_hopf_laws(gl_algebra(labels, max_weight), max_weight, report);
    return report;
}

CheckReport verify_hopf_ck(const std::set<unsigned>& labels, unsigned max_weight) {
    CheckReport report;
    check_hopf_laws(ck_algebra(labels, max_weight), max_weight, report);
    return report;
}

CheckReport verify_duality(const std::set<unsigned>& labels, unsigned max_weight) {
    CheckReport report;
    auto trees = enumerate_gl_basis(labels, max_weight);
    auto forests = enumerate_forests(labels, max_weight);
    for (const auto& x : trees) {
        for (const auto& y : trees) {
            unsigned w = x.weight() + y.weight();
            if (w > max_weight) {
                continue;
            }
            GLVector xy = gl_product(x, y);
            GLTensor xy_tensor({x, y});
            for (const auto& c : forests) {
                if (c.weight() != w) {
                    continue;
                }
                report.record(pairing(xy, CKVector(c)) == pairing(xy_tensor, ck_coproduct(c)),
                              "<x y, c> != <x (x) y, Delta c> for " + x.to_string() + ", " + y.to_string() + ", [" +
                                  c.to_string() + "]");
            }
        }
    }
    for (const auto& x : trees) {
        auto dx = gl_coproduct(x);
        for (const auto& c : forests) {
            for (const auto& d : forests) {
                if (c.weight() + d.weight() != x.weight()) {
                    continue;
                }
                report.record(pairing(dx, CKTensor({c, d})) == pairing(GLVector(x), CKVector(c * d)),
                              "<Delta x, c (x) d> != <x, c d> for " + x.to_string() + ", [" + c.to_string() + "], [" +
                                  d.to_string() + "]");
            }
        }
    }
    return report;
}

CheckReport verify_key_lemma(const std::set<unsigned>& labels, unsigned max_weight, unsigned r) {
    CheckReport report;
    if (r == 0) {
        throw Error("the key lemma needs r >= 1");
    }
    auto basis = enumerate_gl_basis(labels, max_weight);
    GLVector d;
    for (const auto& t : basis) {
        if (t.is_primitive()) {
            d += theta(t) * gl_scaled_basis(t);
        }
    }
    GLVector left = gl_unit();
    for (unsigned i = 0; i < r; ++i) {
        left = gl_truncate(gl_product(left, d), max_weight);
    }
    GLVector right;
    for (const auto& t : basis) {
        Rational sum = 0;
        for (const auto& chain : descending_cut_chains(t, r - 1, false)) {
            Rational p = 1;
            for (const auto& piece : chain.pieces) {
                p *= theta(piece);
            }
            sum += p;
        }
        right += sum * gl_scaled_basis(t);
    }
    for (const auto& t : basis) {
        report.record(left.coefficient(t) == right.coefficient(t),
                      "r = " + std::to_string(r) + " coefficient of " + t.to_string());
    }
    return report;
}

CheckReport verify_a_homomorphism(const Automorphism& f, unsigned max_weight) {
    CheckReport report;
    TreeCalculus calc(f);
    auto basis = enumerate_gl_basis(f.labels(), max_weight);
    std::map<CanonicalTree, OperatorMatrix> image;
    for (const auto& t : basis) {
        image[t] = calc.d_tree(t).materialize(f.spec);
    }
    for (const auto& x : basis) {
        for (const auto& y : basis) {
            if (x.weight() + y.weight() > max_weight) {
                continue;
            }
            auto lhs = calc.apply_a(gl_product(x, y)).materialize(f.spec);
            report.record(lhs == image[x] * image[y], "A(x y) != A(x) A(y) for " + x.to_string() + ", " + y.to_string());
        }
    }
    return report;
}

CheckReport verify_cd1(const Automorphism& f, unsigned max_weight) {
    CheckReport report;
    TreeCalculus calc(f);
    auto labels = f.labels();
    auto basis = enumerate_gl_basis(labels, max_weight);
    auto trees = enumerate_trees(labels, max_weight);
    for (const auto& s : basis) {
        DiffOperator op = calc.d_tree(s);
        for (const auto& t : trees) {
            auto lhs = op.apply(calc.p_tree(t));
            auto rhs = calc.u_map(gl_act_on_tree(GLVector(s), t));
            report.record(lhs == rhs, "A(S) P_T != U(S acting on T) for " + s.to_string() + ", " + t.to_string());
        }
    }
    return report;
}

bool check_bplus_leibniz(const Derivation& phi, const std::vector<Derivation>& deltas) {
    const auto& spec = phi.spec();
    auto phi_op = DiffOperator::derivation(phi);
    auto lhs = DiffOperator::compose({phi_op, DiffOperator::bplus(deltas)}).materialize(spec);
    std::vector<Derivation> with_phi{phi};
    with_phi.insert(with_phi.end(), deltas.begin(), deltas.end());
    auto rhs = DiffOperator::bplus(with_phi).materialize(spec);
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        auto changed = deltas;
        changed[i] = collapse(phi_op, deltas[i]);
        rhs += DiffOperator::bplus(changed).materialize(spec);
    }
    return lhs == rhs;
}

CheckReport verify_graded(const Automorphism& f, unsigned max_weight) {
    for (const auto& [m, comp] : f.components) {
        for (const auto& series : comp.components) {
            for (const auto& [w, c] : series.terms()) {
                if (w.size() != m + 1) {
                    throw InvalidAutomorphism("H_[" + std::to_string(m) + "] is not homogeneous of degree " +
                                              std::to_string(m + 1));
                }
            }
        }
    }
    CheckReport report;
    OperatorMatrix series = taylor_operator_f_negated(f).materialize(f.spec).negate_t();
    unsigned top = std::min(max_weight, f.spec.t_order);
    for (unsigned m = 1; m <= top; ++m) {
        report.record(series.t_coefficient(m).raises_degree_by(m),
                      "t^" + std::to_string(m) + " coefficient of f does not raise degree by " + std::to_string(m));
    }
    return report;
}

} // namespace ncstree
