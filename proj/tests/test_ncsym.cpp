#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "ncstree/errors.hpp"
#include "ncstree/ncsym.hpp"
#include "ncstree/orderpoly.hpp"
#include "ncstree/tree_formulas.hpp"

using namespace ncstree;
using testing_support::T;

namespace {

std::pair<Composition, Composition> tk(Composition a, Composition b) { return {std::move(a), std::move(b)}; }

NSymElement L(const char* text) { return parse_nsym(text); }

// trivial host over the rationals
struct ScalarHost {
    using value_type = Rational;
    Rational unit() const { return 1; }
    Rational zero() const { return 0; }
    Rational add(const Rational& a, const Rational& b) const { return a + b; }
    Rational mul(const Rational& a, const Rational& b) const { return a * b; }
    Rational scale(const Rational& c, const Rational& a) const { return c * a; }
    bool equal(const Rational& a, const Rational& b) const { return a == b; }
};

NSymElement random_nsym(std::mt19937_64& rng, unsigned max_weight) {
    NSymElement x;
    for (int k = 0; k < 3; ++k) {
        Composition w;
        unsigned left = std::uniform_int_distribution<unsigned>(0, max_weight)(rng);
        while (left > 0) {
            unsigned a = std::uniform_int_distribution<unsigned>(1, left)(rng);
            w.push_back(a);
            left -= a;
        }
        x.add(w, Rational(std::uniform_int_distribution<int>(-3, 3)(rng)));
    }
    return x;
}

} // namespace

TEST_CASE("nsym literals") {
    CHECK(format_nsym(L("L1.L1 - L2")) == "1*L1.L1 - 1*L2");
    CHECK(format_nsym(L("1 - 3/2*L1")) == "1 - 3/2*L1");
    CHECK(format_nsym(NSymElement()) == "0");
    CHECK(L("2*L1.L2") == Rational(2) * NSymElement(Composition{1, 2}));
    CHECK_THROWS_AS(L("L0"), ParseError);
    CHECK_THROWS_AS(L("L1 L2"), ParseError);
    CHECK_THROWS_AS(L(""), ParseError);
}

TEST_CASE("solved bases at low weight") {
    auto b = solve_bases(6);
    CHECK(b.S[1] == L("L1"));
    CHECK(b.S[2] == L("L1.L1 - L2"));
    CHECK(b.S[3] == L("L1.L1.L1 - L1.L2 - L2.L1 + L3"));
    for (const auto* x : {&b.Psi, &b.Phi, &b.Xi}) {
        CHECK((*x)[1] == L("L1"));
        CHECK((*x)[2] == L("L1.L1 - 2*L2"));
    }
    CHECK(b.Psi[3] == L("L1.L1.L1 - L1.L2 - 2*L2.L1 + 3*L3"));
    CHECK(b.Xi[3] == L("L1.L1.L1 - 2*L1.L2 - L2.L1 + 3*L3"));
    CHECK(b.Phi[3] == L("L1.L1.L1 - 3/2*L1.L2 - 3/2*L2.L1 + 3*L3"));
    CHECK(b.Psi[3] != b.Phi[3]);
    for (unsigned m = 1; m <= 6; ++m) {
        CHECK(nsym_homogeneous(b.S[m], m) == b.S[m]);
        CHECK(nsym_homogeneous(b.Psi[m], m) == b.Psi[m]);
        CHECK(nsym_homogeneous(b.Phi[m], m) == b.Phi[m]);
        CHECK(nsym_homogeneous(b.Xi[m], m) == b.Xi[m]);
        // the coefficient of Lambda_m in every power sum is (-1)^{m-1} m
        CHECK(b.Psi[m].coefficient({m}) == sign_power(m - 1) * Rational(m));
    }
}

TEST_CASE("power sums abelianize to the classical Newton power sums") {
    auto b = solve_bases(5);
    auto abel = [](const NSymElement& x) {
        NSymElement out;
        for (const auto& [k, c] : x) {
            Composition w = k;
            std::sort(w.begin(), w.end());
            out.add(w, c);
        }
        return out;
    };
    // Newton: p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
    std::vector<NSymElement> p{NSymElement()};
    for (unsigned k = 1; k <= 5; ++k) {
        NSymElement acc = sign_power(k - 1) * Rational(k) * nsym_lambda(k);
        for (unsigned i = 1; i < k; ++i) {
            acc += sign_power(i - 1) * abel(nsym_product(nsym_lambda(i), p[k - i]));
        }
        p.push_back(abel(acc));
        CHECK(abel(b.Psi[k]) == p[k]);
        CHECK(abel(b.Phi[k]) == p[k]);
        CHECK(abel(b.Xi[k]) == p[k]);
    }
}

TEST_CASE("NCS verifier") {
    ScalarHost host;
    NCSTuple<Rational> trivial{{1}, {1}, {0}, {0}, {0}};
    CHECK(verify_ncs(host, trivial, 4).ok);

    auto u = universal_system(6);
    NSymHost nh;
    auto r = verify_ncs(nh, u, 6);
    CHECK(r.ok);

    auto bad = u;
    bad.g[2] += L("L2");
    r = verify_ncs(nh, bad, 6);
    CHECK(!r.ok);
    CHECK(r.equation == "UE-1");
    CHECK(r.order == 2);

    auto bad_h = u;
    bad_h.h[1] += L("L2");
    r = verify_ncs(nh, bad_h, 6);
    CHECK(r.equation == "UE-3");
    CHECK(r.order == 1);

    auto bad_f = u;
    bad_f.f[0] = L("2");
    CHECK(verify_ncs(nh, bad_f, 6).equation == "UE-0");
}

TEST_CASE("nsym Hopf structure") {
    NSymTensor d1;
    d1.add(tk({1}, {}), 1);
    d1.add(tk({}, {1}), 1);
    CHECK(nsym_coproduct(L("L1")) == d1);
    NSymTensor d2;
    d2.add(tk({2}, {}), 1);
    d2.add(tk({1}, {1}), 1);
    d2.add(tk({}, {2}), 1);
    CHECK(nsym_coproduct(L("L2")) == d2);
    CHECK(nsym_coproduct_via_psi(L("L2")) == d2);

    auto b = solve_bases(4);
    for (unsigned m = 1; m <= 4; ++m) {
        auto delta = nsym_coproduct(b.Psi[m]);
        auto expected = [&] {
            NSymTensor out;
            for (const auto& [w, c] : b.Psi[m]) {
                out.add(tk(w, {}), c);
                out.add(tk({}, w), c);
            }
            return out;
        }();
        CHECK(delta == expected);
        CHECK(nsym_antipode(b.Psi[m]) == -b.Psi[m]);
        CHECK(nsym_counit(b.Psi[m]) == 0);
    }

    std::mt19937_64 rng(17);
    for (int i = 0; i < 15; ++i) {
        auto x = random_nsym(rng, 4);
        CHECK(nsym_coproduct(x) == nsym_coproduct_via_psi(x));
        CHECK(psi_to_lambda(lambda_to_psi(x)) == x);
        // (eps (x) id) Delta = id
        NSymElement left;
        NSymElement right;
        NSymElement conv;
        for (const auto& [k, c] : nsym_coproduct(x)) {
            if (k.first.empty()) left.add(k.second, c);
            if (k.second.empty()) right.add(k.first, c);
            conv += c * nsym_product(nsym_antipode(NSymElement(k.first)), NSymElement(k.second));
        }
        CHECK(left == x);
        CHECK(right == x);
        CHECK(conv == nsym_counit(x) * nsym_unit());
    }
}

TEST_CASE("tree constants") {
    CHECK(beta_constant(T("(0 (1 (2)))")) == 2);
    CHECK(beta_constant(T("(0 (1) (2))")) == 0);
    CHECK(beta_constant(T("(0)")) == 0);
    CHECK(gamma_constant(T("(0 (1 (2)))")) == 1);
    CHECK(gamma_constant(T("(0 (2 (1) (1)))")) == 2);
    CHECK(gamma_constant(T("(0 (1) (1))")) == 0);
}

TEST_CASE("tree system is an NCS system") {
    GLHost host;
    auto omega = omega_trees({1}, 5);
    CHECK(omega.g[1] == GLVector(T("(0 (1))")));
    CHECK(omega.f[1] == GLVector(T("(0 (1))")));
    auto r = verify_ncs(host, omega, 5);
    CHECK(r.ok);
    CAPTURE(r.equation);
    CAPTURE(r.order);
    auto two = omega_trees({1, 2}, 4);
    CHECK(verify_ncs(host, two, 4).ok);
    CHECK(f_tree_by_kappa({1}, 5) == omega.f);
    CHECK(f_tree_by_kappa({1, 2}, 4) == two.f);
    // d~ is the logarithm of g~
    CHECK(series_log(host, omega.g, 5) == omega.d);
}

TEST_CASE("specialization to trees") {
    std::set<unsigned> w{1};
    CHECK(specialize_t(w, nsym_unit(), 3) == gl_unit());
    CHECK(specialize_t(w, L("L1"), 3) == GLVector(T("(0 (1))")));
    CHECK_THROWS_AS(specialize_t(w, L("L1.L3"), 3), WeightOverflow);

    std::set<unsigned> w12{1, 2};
    std::mt19937_64 rng(4);
    for (int i = 0; i < 10; ++i) {
        auto x = random_nsym(rng, 3);
        auto y = random_nsym(rng, 3);
        CHECK(specialize_t(w12, nsym_product(x, y), 6) == gl_product(specialize_t(w12, x, 6), specialize_t(w12, y, 6)));
    }
    // universal property: the tree system is the image of the universal one
    auto u = universal_system(4);
    auto omega = omega_trees(w12, 4);
    for (unsigned k = 0; k <= 4; ++k) {
        CHECK(specialize_t(w12, u.g[k], 4) == omega.g[k]);
        CHECK(specialize_t(w12, u.d[k], 4) == omega.d[k]);
    }
    for (unsigned k = 0; k < 4; ++k) {
        CHECK(specialize_t(w12, u.h[k], 4) == omega.h[k]);
        CHECK(specialize_t(w12, u.m[k], 4) == omega.m[k]);
    }
    // coproducts are intertwined
    auto b = solve_bases(2);
    for (const auto& x : {L("L1"), L("L2"), b.Psi[2]}) {
        GLTensor mapped;
        for (const auto& [k, c] : nsym_coproduct(x)) {
            auto l = specialize_t(w12, NSymElement(k.first), 4);
            auto r = specialize_t(w12, NSymElement(k.second), 4);
            for (const auto& [a, ca] : l) {
                for (const auto& [bb, cb] : r) {
                    mapped.add({a, bb}, c * ca * cb);
                }
            }
        }
        CHECK(gl_coproduct(specialize_t(w12, x, 4)) == mapped);
    }
}

TEST_CASE("injectivity ranks") {
    for (unsigned m = 1; m <= 4; ++m) {
        auto r = injectivity_rank(m);
        CHECK(r.rank == r.expected);
        CHECK(r.expected == (std::size_t{1} << (m - 1)));
    }
}

TEST_CASE("operator system of an automorphism") {
    RandomAutomorphismOptions opts;
    opts.t_order = 4;
    opts.z_degree = 3;
    opts.max_variables = 2;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto f = random_automorphism(seed, opts);
        CAPTURE(seed);
        auto omega = omega_map(f);
        OperatorHost host{f.spec};
        auto r = verify_ncs(host, omega, f.spec.t_order);
        CHECK(r.ok);
        CAPTURE(r.equation);
        CAPTURE(r.order);
        CHECK(verify_cd2(f, 4).ok);
        auto image = verify_tree_system_image(f);
        CHECK(image.ok);
        for (const auto& msg : image.failures) {
            MESSAGE(msg);
        }
        CHECK(specialize_s(f, L("L1.L2")) == specialize_s(f, L("L1")) * specialize_s(f, L("L2")));
    }
}
