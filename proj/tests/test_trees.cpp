#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "ncstree/errors.hpp"
#include "ncstree/trees.hpp"

using namespace ncstree;
using testing_support::T;

TEST_CASE("canonical form ignores child order") {
    CHECK(T("(1 (1 (1)) (1))") == T("(1 (1) (1 (1)))"));
    CHECK(T("(1)").to_string() == "(1)");
    CHECK(T("(1 (1 (1)))") != T("(1 (1) (1))"));
    CHECK(T(" ( 0 (2 (1)) (1) ) ").to_string() == "(0 (1) (2 (1)))");
}

TEST_CASE("non-root label 0 is rejected") {
    CHECK_THROWS_AS(parse_tree("(1 (0))"), ParseError);
    RawTree raw{1, {RawTree{0, {}}}};
    CHECK_THROWS_AS(canonicalize(raw), InvalidLabel);
    CHECK_THROWS_AS(CanonicalTree::make(1, {CanonicalTree()}), InvalidLabel);
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_tree("(1 (x))");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(parse_tree("(1"), ParseError);
    CHECK_THROWS_AS(parse_tree("(1) (1)"), ParseError);
}

TEST_CASE("canonical encoding agrees with brute-force isomorphism up to six vertices") {
    for (std::size_t n = 1; n <= 5; ++n) {
        std::vector<oracle::ParentTree> all;
        oracle::for_each_parent_tree(n, {1, 2}, [&](const oracle::ParentTree& t) { all.push_back(t); });
        // A deterministic sample of pairs keeps the permutation search affordable.
        for (std::size_t i = 0; i < all.size(); i += 7) {
            for (std::size_t j = i; j < all.size(); j += 11) {
                bool iso = oracle::count_isomorphisms(all[i], all[j]) > 0;
                CHECK(iso == (testing_support::from_parent(all[i]) == testing_support::from_parent(all[j])));
            }
        }
    }
    std::vector<oracle::ParentTree> six;
    oracle::for_each_parent_tree(6, {1}, [&](const oracle::ParentTree& t) { six.push_back(t); });
    for (std::size_t i = 0; i < six.size(); i += 5) {
        for (std::size_t j = i; j < six.size(); j += 13) {
            bool iso = oracle::count_isomorphisms(six[i], six[j]) > 0;
            CHECK(iso == (testing_support::from_parent(six[i]) == testing_support::from_parent(six[j])));
        }
    }
}

TEST_CASE("automorphism order") {
    CHECK(T("(1)").aut_order() == 1);
    CHECK(T("(1 (1) (1))").aut_order() == 2);
    CHECK(T("(1 (1) (2))").aut_order() == 1);
    CHECK(T("(1 (1) (1) (1))").aut_order() == 6);
    for (std::size_t n = 1; n <= 6; ++n) {
        oracle::for_each_parent_tree(n, {1}, [&](const oracle::ParentTree& t) {
            CHECK(testing_support::from_parent(t).aut_order() == oracle::count_automorphisms(t));
        });
    }
    oracle::for_each_parent_tree(4, {1, 2}, [&](const oracle::ParentTree& t) {
        CHECK(testing_support::from_parent(t).aut_order() == oracle::count_automorphisms(t));
    });
}

TEST_CASE("enumeration counts") {
    auto trees = enumerate_trees({1}, 7);
    std::map<unsigned, std::size_t> by_weight;
    for (const auto& t : trees) {
        ++by_weight[t.weight()];
    }
    std::vector<std::size_t> expected{1, 1, 2, 4, 9, 20, 48};
    for (unsigned w = 1; w <= 7; ++w) {
        CHECK(by_weight[w] == expected[w - 1]);
        CHECK(by_weight[w] == oracle::count_rooted_trees(w));
    }
    CHECK(std::is_sorted(trees.begin(), trees.end()));

    auto small = enumerate_trees({1, 2}, 2);
    REQUIRE(small.size() == 3);
    CHECK(std::find(small.begin(), small.end(), T("(2)")) != small.end());
    CHECK(std::find(small.begin(), small.end(), T("(1 (1))")) != small.end());
    CHECK(enumerate_trees({2}, 1).empty());
}

TEST_CASE("labeled enumeration matches brute force by weight") {
    std::map<unsigned, std::set<std::string>> oracle_classes;
    for (std::size_t n = 1; n <= 5; ++n) {
        oracle::for_each_parent_tree(n, {1, 2}, [&](const oracle::ParentTree& t) {
            unsigned w = 0;
            for (auto l : t.label) {
                w += l;
            }
            if (w <= 5) {
                oracle_classes[w].insert(oracle::ahu(t));
            }
        });
    }
    std::map<unsigned, std::size_t> counts;
    for (const auto& t : enumerate_trees({1, 2}, 5)) {
        ++counts[t.weight()];
    }
    for (unsigned w = 1; w <= 5; ++w) {
        CHECK(counts[w] == oracle_classes[w].size());
    }
}

TEST_CASE("b_plus and b_minus") {
    CHECK(b_plus(Forest(), 0) == CanonicalTree());
    CHECK(b_minus(T("(1 (1) (2))")) == Forest({T("(1)"), T("(2)")}));
    for (const auto& t : enumerate_trees({1, 2}, 4)) {
        CHECK(b_plus(b_minus(t), t.label()) == t);
        CHECK(b_minus(b_plus(b_minus(t), 7)) == b_minus(t));
    }
}

TEST_CASE("forest literals") {
    CHECK(parse_forest("1").empty());
    CHECK(parse_forest("[]").empty());
    CHECK(parse_forest("(1) (2 (1))").size() == 2);
    CHECK(parse_forest("[(1) (1)]").to_string() == "(1) (1)");
    CHECK_THROWS_AS(parse_forest("(0)"), ParseError);
}

namespace {

bool ancestor(const oracle::ParentTree& t, int a, int v) {
    for (int x = v; x >= 0; x = t.parent[x]) {
        if (x == a) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("admissible cuts") {
    auto two = admissible_cuts(T("(1 (1))"));
    REQUIRE(two.size() == 2);
    CHECK(two[0].cut.edges.empty());
    CHECK(two[0].pruned.empty());
    CHECK(two[0].remainder == T("(1 (1))"));
    CHECK(two[1].pruned == Forest({T("(1)")}));
    CHECK(two[1].remainder == T("(1)"));

    CHECK(admissible_cuts(T("(1 (1 (1)))")).size() == 3);
    CHECK(admissible_cuts(T("(0 (1) (1))")).size() == 4);

    // Count against all edge subsets filtered by the ancestor test.
    for (const auto& tree : enumerate_trees({1, 2}, 5)) {
        auto p = testing_support::to_parent(tree);
        const std::size_t edges = p.size() - 1;
        std::size_t admissible = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges); ++mask) {
            bool ok = true;
            for (std::size_t a = 0; a < edges && ok; ++a) {
                for (std::size_t b = 0; b < edges && ok; ++b) {
                    if (a != b && (mask >> a & 1U) && (mask >> b & 1U) &&
                        ancestor(p, static_cast<int>(a + 1), static_cast<int>(b + 1))) {
                        ok = false;
                    }
                }
            }
            admissible += ok;
        }
        auto cuts = admissible_cuts(tree);
        CHECK(cuts.size() == admissible);
        for (const auto& c : cuts) {
            CHECK(c.pruned.vertex_count() + c.remainder.vertex_count() == tree.vertex_count());
            CHECK(c.pruned.weight() + c.remainder.weight() == tree.weight());
            CHECK(c.pruned.size() == c.cut.edges.size());
        }
    }
}

TEST_CASE("descending cut chains") {
    auto chains = descending_cut_chains(T("(0 (1))"), 1, true);
    REQUIRE(chains.size() == 1);
    CHECK(chains[0].pieces[0] == T("(0 (1))"));
    CHECK(chains[0].pieces[1] == T("(0)"));

    auto with_empty = descending_cut_chains(T("(1 (1))"), 1, false);
    REQUIRE(with_empty.size() == 2);
    CHECK(with_empty[0].pieces[0] == CanonicalTree());
    CHECK(with_empty[0].pieces[1] == T("(1 (1))"));

    CHECK(descending_cut_chains(T("(1)"), 1, true).empty());

    // On the 3-chain the single-edge chains of length 2 go lower edge first, then upper.
    auto two = descending_cut_chains(T("(0 (1 (1)))"), 2, true);
    REQUIRE(two.size() == 1);
    CHECK(two[0].pieces[0] == T("(0 (1))"));
    CHECK(two[0].pieces[1] == T("(0 (1))"));
    CHECK(two[0].pieces[2] == T("(0)"));
}
