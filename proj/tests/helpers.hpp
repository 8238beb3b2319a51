#pragma once

#include <functional>

#include "ncstree/trees.hpp"
#include "oracles.hpp"

namespace testing_support {

inline oracle::ParentTree to_parent(const ncstree::CanonicalTree& tree) {
    oracle::ParentTree out;
    std::function<void(const ncstree::CanonicalTree&, int)> walk = [&](const ncstree::CanonicalTree& t, int par) {
        int id = static_cast<int>(out.parent.size());
        out.parent.push_back(par);
        out.label.push_back(t.label());
        for (const auto& c : t.children()) {
            walk(c, id);
        }
    };
    walk(tree, -1);
    return out;
}

inline ncstree::CanonicalTree from_parent(const oracle::ParentTree& t, int v = 0) {
    std::vector<ncstree::CanonicalTree> kids;
    for (std::size_t c = 0; c < t.size(); ++c) {
        if (t.parent[c] == v) {
            kids.push_back(from_parent(t, static_cast<int>(c)));
        }
    }
    return ncstree::CanonicalTree::make(t.label[v], std::move(kids));
}

inline ncstree::CanonicalTree T(const char* literal) { return ncstree::parse_tree(literal); }

} // namespace testing_support
