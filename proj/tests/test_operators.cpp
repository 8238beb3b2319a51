#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "ncstree/automorphism.hpp"
#include "ncstree/diffop.hpp"
#include "ncstree/errors.hpp"
#include "ncstree/orderpoly.hpp"
#include "ncstree/tree_formulas.hpp"

using namespace ncstree;
using testing_support::T;

namespace {

TruncationSpec spec(unsigned n, unsigned d, unsigned N, bool comm = false) { return {d, N, n, comm}; }

SeriesVector vec(const TruncationSpec& sp, std::initializer_list<const char*> parts) {
    SeriesVector out = SeriesVector::zero(sp);
    std::size_t i = 0;
    for (const char* p : parts) {
        out[i++] = parse_series(p, sp);
    }
    return out;
}

Automorphism make_map(const TruncationSpec& sp, std::map<unsigned, std::vector<const char*>> comps, unsigned alpha = 1) {
    Automorphism f;
    f.spec = sp;
    f.alpha = alpha;
    for (auto& [m, parts] : comps) {
        SeriesVector v = SeriesVector::zero(sp);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            v[i] = parse_series(parts[i], sp);
        }
        f.components[m] = v;
    }
    f.validate();
    return f;
}

// B+ computed with a doubled alphabet: letters n..2n-1 stand for a frozen copy of
// z. Each derivation sends z_i to its coefficient written in the frozen copy,
// so successive derivations cannot act on earlier output. Then the copy is thawed.
NCSeries bplus_doubled(const std::vector<Derivation>& deltas, const NCSeries& u) {
    const auto& sp = u.spec();
    unsigned n = sp.variables;
    TruncationSpec big = sp;
    big.variables = 2 * n;
    auto lift = [&](const NCSeries& x, unsigned shift) {
        NCSeries out(big);
        for (const auto& [w, c] : x.terms()) {
            Word v = w;
            for (auto& ch : v) {
                ch = static_cast<char>(ch + shift);
            }
            out.add_term(v, c);
        }
        return out;
    };
    NCSeries cur = lift(u, 0);
    for (const auto& d : deltas) {
        SeriesVector coeffs = SeriesVector::zero(big);
        for (unsigned i = 0; i < n; ++i) {
            coeffs[i] = lift(d.coefficients[i], n);
        }
        cur = apply_derivation(Derivation(coeffs), cur);
    }
    NCSeries out(sp);
    for (const auto& [w, c] : cur.terms()) {
        Word v = w;
        for (auto& ch : v) {
            if (static_cast<unsigned>(ch) >= n) {
                ch = static_cast<char>(ch - n);
            }
        }
        out.add_term(v, c);
    }
    return out;
}

NCSeries random_poly(std::mt19937_64& rng, const TruncationSpec& sp, unsigned min_len, unsigned max_len, unsigned max_t) {
    NCSeries out(sp);
    std::uniform_int_distribution<int> coin(-2, 2);
    for (int k = 0; k < 3; ++k) {
        Word w;
        unsigned len = std::uniform_int_distribution<unsigned>(min_len, max_len)(rng);
        for (unsigned j = 0; j < len; ++j) {
            w += static_cast<char>(std::uniform_int_distribution<unsigned>(0, sp.variables - 1)(rng));
        }
        out.add_term(w, TPoly::monomial(Rational(coin(rng)), std::uniform_int_distribution<unsigned>(0, max_t)(rng)));
    }
    return out;
}

} // namespace

TEST_CASE("derivations follow the Leibniz rule") {
    auto sp = spec(2, 4, 2);
    Derivation d(vec(sp, {"z2", "z1*z1"}));
    CHECK(apply_derivation(d, parse_series("z1*z2", sp)) == parse_series("z2*z2 + z1*z1*z1", sp));
    CHECK(apply_derivation(d, parse_series("3", sp)).is_zero());
    std::mt19937_64 rng(21);
    for (int i = 0; i < 20; ++i) {
        Derivation r(SeriesVector{{random_poly(rng, sp, 1, 2, 1), random_poly(rng, sp, 1, 2, 1)}});
        auto a = random_poly(rng, sp, 0, 2, 1);
        auto b = random_poly(rng, sp, 0, 2, 1);
        CHECK(apply_derivation(r, a * b) == apply_derivation(r, a) * b + a * apply_derivation(r, b));
    }
}

TEST_CASE("bplus examples") {
    auto sp = spec(1, 4, 1);
    Derivation d(vec(sp, {"z1*z1"}));
    auto u = parse_series("z1*z1", sp);
    CHECK(bplus_apply({d}, u) == parse_series("2*z1^3", sp));
    CHECK(bplus_apply({d, d}, u) == parse_series("2*z1^4", sp));
    CHECK(bplus_apply({d, d}, parse_series("z1", sp)).is_zero());
    CHECK(bplus_apply({}, u) == u);
    auto two = spec(2, 4, 1);
    Derivation a(vec(two, {"z2", "0"}));
    Derivation b(vec(two, {"0", "z1"}));
    CHECK(bplus_apply({a, b}, parse_series("z1*z2", two)) == parse_series("z2*z1", two));
    CHECK(bplus_apply({a, b}, parse_series("z1*z1", two)).is_zero());
}

TEST_CASE("bplus agrees with the doubled-alphabet construction") {
    std::mt19937_64 rng(99);
    auto sp = spec(2, 5, 2);
    for (int i = 0; i < 40; ++i) {
        std::vector<Derivation> ds;
        unsigned k = std::uniform_int_distribution<unsigned>(0, 3)(rng);
        for (unsigned j = 0; j < k; ++j) {
            ds.emplace_back(SeriesVector{{random_poly(rng, sp, 1, 2, 1), random_poly(rng, sp, 1, 2, 1)}});
        }
        auto u = random_poly(rng, sp, 0, 3, 1);
        CHECK(bplus_apply(ds, u) == bplus_doubled(ds, u));
        // symmetric in the order of derivations
        std::vector<Derivation> rev(ds.rbegin(), ds.rend());
        CHECK(bplus_apply(rev, u) == bplus_apply(ds, u));
    }
}

TEST_CASE("operator expressions and matrices") {
    auto sp = spec(2, 3, 2);
    Derivation a(vec(sp, {"z2", "t*z1"}));
    Derivation b(vec(sp, {"z1*z2", "0"}));
    auto op = DiffOperator::compose({DiffOperator::derivation(a), DiffOperator::derivation(b)});
    auto u = parse_series("z1*z2 + z2", sp);
    CHECK(op.apply(u) == apply_derivation(a, apply_derivation(b, u)));
    auto ma = DiffOperator::derivation(a).materialize(sp);
    auto mb = DiffOperator::derivation(b).materialize(sp);
    CHECK((ma * mb).apply(u) == op.apply(u));
    CHECK(op.materialize(sp) == ma * mb);
    auto lc = DiffOperator::lincomb({{TPoly::monomial(Rational(2), 1), DiffOperator()}, {TPoly::monomial(1, 0), op}});
    CHECK(lc.apply(u) == u.times(TPoly::monomial(Rational(2), 1)) + op.apply(u));
    CHECK(mb.raises_degree_by(1));
    CHECK(!ma.raises_degree_by(1));
    CHECK(OperatorMatrix::identity(sp).apply(u) == u);

    // collapse applies phi to each coefficient
    auto c = collapse(DiffOperator::derivation(b), a);
    CHECK(c.coefficients[0] == apply_derivation(b, a.coefficients[0]));
    CHECK(c.coefficients[1] == apply_derivation(b, a.coefficients[1]));
}

TEST_CASE("operator exp and log are inverse") {
    auto sp = spec(2, 3, 3);
    Derivation a(vec(sp, {"t*z2*z1", "t^2*z1 + t*z2*z2"}));
    auto ma = DiffOperator::derivation(a).materialize(sp);
    auto e = operator_exp(ma);
    CHECK(operator_log(e) == ma);
    // exp of a derivation acts as the substitution by its flow on z
    CHECK(e.apply(SeriesVector::identity(sp)) == exp_derivation(a.coefficients));
    // multiplicative
    auto u = parse_series("z1*z2", sp);
    auto v = parse_series("z2 + z1*z1", sp);
    CHECK(e.apply(u * v) == e.apply(u) * e.apply(v));
}

TEST_CASE("Catalan inverse") {
    auto sp = spec(1, 9, 8);
    auto f = make_map(sp, {{1, {"z1*z1"}}});
    auto g = fixed_point_inverse(f);
    TreeCalculus calc(f);
    auto tg = calc.tree_inverse();
    CHECK(g == tg);
    for (unsigned k = 0; k <= 7; ++k) {
        Word w(k + 1, 0);
        CHECK(tg[0].coefficient(w) == TPoly::monomial(Rational(oracle::catalan(8)[k]), k));
    }
    // inverse really inverts
    CHECK(substitute(f.F(), g) == SeriesVector::identity(sp));
    CHECK(substitute(g, f.F()) == SeriesVector::identity(sp));
}

TEST_CASE("P_T on small examples") {
    auto sp = spec(1, 6, 4);
    auto f = make_map(sp, {{1, {"z1*z1"}}});
    TreeCalculus calc(f);
    CHECK(calc.p_tree(T("(1)")) == vec(sp, {"z1*z1"}));
    CHECK(calc.p_tree(T("(1 (1))")) == vec(sp, {"2*z1^3"}));
    CHECK(calc.p_tree(T("(1 (1) (1))")) == vec(sp, {"2*z1^4"}));
    CHECK(calc.p_tree(T("(2)")).is_zero());

    auto two = spec(2, 4, 3);
    auto f2 = make_map(two, {{1, {"z2*z2", "0"}}});
    TreeCalculus c2(f2);
    CHECK(c2.p_tree(T("(1 (1))")).is_zero());
    CHECK(c2.tree_inverse() == vec(two, {"z1 + t*z2*z2", "z2"}));
    auto ops = operator_series(f2);
    Derivation h(vec(two, {"z2*z2", "0"}));
    auto mh = DiffOperator::derivation(h).materialize(two);
    CHECK(ops.h == mh);
    CHECK(ops.m == mh);
}

TEST_CASE("dlog of the Catalan map") {
    auto sp = spec(1, 6, 5);
    auto f = make_map(sp, {{1, {"z1*z1"}}});
    TreeCalculus calc(f);
    auto a = calc.d_log();
    CHECK(a[0].t_coefficient(1) == parse_series("-z1*z1", sp));
    CHECK(a[0].t_coefficient(2) == parse_series("-z1^3", sp));
    CHECK(exp_derivation(a) == f.F());
}

TEST_CASE("flows and powers of the Catalan map") {
    auto sp = spec(1, 5, 4);
    auto f = make_map(sp, {{1, {"z1*z1"}}});
    TreeCalculus calc(f);
    CHECK(calc.flow(Rational(1)) == f.F());
    CHECK(calc.flow(Rational(0)) == SeriesVector::identity(sp));
    CHECK(calc.flow(Rational(-1)) == calc.tree_inverse());
    auto sq = calc.mth_power(2);
    CHECK(sq[0].retruncated(spec(1, 4, 3)) == parse_series("z1 - 2*t*z1^2 + 2*t^2*z1^3 - t^3*z1^4", spec(1, 4, 3)));
    CHECK(sq == substitute(f.F(), f.F()));
}

TEST_CASE("tree formulas on random automorphisms") {
    RandomAutomorphismOptions opts;
    opts.t_order = 4;
    opts.z_degree = 4;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        auto f = random_automorphism(seed, opts);
        CAPTURE(seed);
        TreeCalculus calc(f);
        auto g = calc.tree_inverse();
        CHECK(g == fixed_point_inverse(f));
        CHECK(substitute(f.F(), g) == SeriesVector::identity(f.spec));
        auto a = calc.d_log();
        CHECK(exp_derivation(a) == f.F());
        auto f2 = substitute(f.F(), f.F());
        CHECK(calc.mth_power(2) == f2);
        CHECK(calc.mth_power(3) == substitute(f2, f.F()));
        CHECK(calc.mth_power(-2) == substitute(g, g));
        auto half = calc.flow(make_rational(1, 2));
        CHECK(substitute(half, half) == f.F());
        auto formal = calc.flow_formal();
        SeriesVector at3 = SeriesVector::zero(f.spec);
        Rational p = 1;
        for (const auto& c : formal) {
            at3 = at3 + p * c;
            p *= 3;
        }
        CHECK(at3 == calc.mth_power(3));
    }
}

TEST_CASE("operator series of random automorphisms") {
    RandomAutomorphismOptions opts;
    opts.t_order = 4;
    opts.z_degree = 3;
    opts.max_variables = 2;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto f = random_automorphism(seed, opts);
        CAPTURE(seed);
        auto ops = operator_series(f);
        auto id = OperatorMatrix::identity(f.spec);
        CHECK(ops.f.negate_t() * ops.g == id);
        CHECK(ops.g * ops.f.negate_t() == id);
        CHECK(operator_exp(ops.d) == ops.g);
        // g acts as substitution by the inverse
        CHECK(ops.g.apply(SeriesVector::identity(f.spec)) == fixed_point_inverse(f));
        TreeCalculus calc(f);
        auto a = calc.d_log();
        auto ma = DiffOperator::derivation(Derivation(a)).materialize(f.spec);
        CHECK(ops.d == -Rational(1) * ma);
        // derivative identities hold below the top t-order
        TruncationSpec low = f.spec;
        low.t_order -= 1;
        auto cut = [&](const OperatorMatrix& x) {
            return OperatorMatrix::from_function(low, [&](const NCSeries& u) {
                NCSeries full(f.spec);
                for (const auto& [w, c] : u.terms()) full.add_term(w, c);
                return x.apply(full).retruncated(low);
            });
        };
        CHECK(cut(ops.g.t_derivative()) == cut(ops.g * ops.h));
        CHECK(cut(ops.g.t_derivative()) == cut(ops.m * ops.g));
    }
}

TEST_CASE("separating automorphisms") {
    std::set<unsigned> labels{1, 2};
    for (const char* lit : {"(1)", "(2 (1))", "(1 (1) (2))", "(1 (1 (1)))"}) {
        auto tree = T(lit);
        auto f = separating_automorphism(tree, 1, labels, tree.weight() + 1);
        CAPTURE(lit);
        TreeCalculus calc(f);
        CHECK(!calc.p_tree(tree).is_zero());
        for (const auto& other : calc.trees()) {
            if (other != tree && other.weight() >= tree.weight()) {
                CAPTURE(other.to_string());
                CHECK(calc.p_tree(other).is_zero());
            }
        }
    }
}

TEST_CASE("invalid automorphisms are rejected") {
    auto sp = spec(1, 3, 3);
    CHECK_THROWS_AS(make_map(sp, {{0, {"z1*z1"}}}), InvalidAutomorphism);
    CHECK_THROWS_AS(make_map(sp, {{1, {"t*z1*z1"}}}), InvalidAutomorphism);
    CHECK_THROWS_AS(make_map(sp, {{1, {"z1*z1"}}}, 3), InvalidAutomorphism);
}
