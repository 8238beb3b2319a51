#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "ncstree/rational.hpp"

namespace oracle {

/// Rooted tree as a parent array: parent[0] = -1, parent[i] < i otherwise.
struct ParentTree {
    std::vector<int> parent;
    std::vector<unsigned> label;
    std::size_t size() const { return parent.size(); }
};

/// AHU-style encoding: sorted child encodings below each labeled vertex.
inline std::string ahu(const ParentTree& t, int v = 0) {
    std::vector<std::string> kids;
    for (std::size_t c = 0; c < t.size(); ++c) {
        if (t.parent[c] == v) {
            kids.push_back(ahu(t, static_cast<int>(c)));
        }
    }
    std::sort(kids.begin(), kids.end());
    std::string out = "<" + std::to_string(t.label[v]);
    for (const auto& k : kids) {
        out += k;
    }
    return out + ">";
}

/// Every parent array on n vertices with labels from `labels`.
inline void for_each_parent_tree(std::size_t n, const std::vector<unsigned>& labels,
                                 const std::function<void(const ParentTree&)>& visit) {
    ParentTree t;
    t.parent.assign(n, -1);
    t.label.assign(n, labels.front());
    std::function<void(std::size_t)> rec_label = [&](std::size_t i) {
        if (i == n) {
            visit(t);
            return;
        }
        for (unsigned l : labels) {
            t.label[i] = l;
            rec_label(i + 1);
        }
    };
    std::function<void(std::size_t)> rec_parent = [&](std::size_t i) {
        if (i == n) {
            rec_label(0);
            return;
        }
        for (std::size_t p = 0; p < i; ++p) {
            t.parent[i] = static_cast<int>(p);
            rec_parent(i + 1);
        }
    };
    rec_parent(1);
}

/// Number of isomorphism classes of unlabeled rooted trees with n vertices.
inline std::size_t count_rooted_trees(std::size_t n) {
    std::set<std::string> seen;
    for_each_parent_tree(n, {1}, [&](const ParentTree& t) { seen.insert(ahu(t)); });
    return seen.size();
}

/// Calls visit(perm) for every bijection of 0..n-1 fixing 0 that maps a onto b.
inline std::size_t count_isomorphisms(const ParentTree& a, const ParentTree& b) {
    if (a.size() != b.size()) {
        return 0;
    }
    std::vector<int> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t count = 0;
    do {
        bool ok = true;
        for (std::size_t v = 0; v < a.size() && ok; ++v) {
            int w = perm[v];
            ok = a.label[v] == b.label[w] &&
                 (a.parent[v] < 0 ? b.parent[w] < 0 : b.parent[w] == perm[a.parent[v]]);
        }
        count += ok;
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return count;
}

inline std::size_t count_automorphisms(const ParentTree& t) { return count_isomorphisms(t, t); }

/// Brute-force count of maps into {1..s}: weakly (or strictly) increasing away from the roots.
inline long count_order_maps(const ParentTree& t, unsigned s, bool strict) {
    const std::size_t n = t.size();
    std::vector<unsigned> value(n, 1);
    long count = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            for (std::size_t v = 0; v < n; ++v) {
                if (t.parent[v] >= 0) {
                    unsigned pv = value[t.parent[v]];
                    if (strict ? value[v] <= pv : value[v] < pv) {
                        return;
                    }
                }
            }
            ++count;
            return;
        }
        for (unsigned x = 1; x <= s; ++x) {
            value[i] = x;
            rec(i + 1);
        }
    };
    rec(0);
    return count;
}

/// Catalan numbers by the recurrence C_{k+1} = sum C_i C_{k-i}.
inline std::vector<ncstree::Integer> catalan(std::size_t count) {
    std::vector<ncstree::Integer> c(count, 0);
    c[0] = 1;
    for (std::size_t k = 1; k < count; ++k) {
        for (std::size_t i = 0; i < k; ++i) {
            c[k] += c[i] * c[k - 1 - i];
        }
    }
    return c;
}

/// Lagrange inversion for G = z + t G^2: [t^k] G = binom(2k, k)/(k+1) z^{k+1}.
inline ncstree::Integer catalan_by_lagrange(unsigned k) {
    ncstree::Integer b;
    mpz_bin_uiui(b.get_mpz_t(), 2 * k, k);
    return b / (k + 1);
}

} // namespace oracle
