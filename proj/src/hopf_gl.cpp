#include "ncstree/hopf_gl.hpp"

#include <functional>
#include <map>
#include <mutex>

#include "ncstree/errors.hpp"
#include "ncstree/lincomb_io.hpp"

namespace ncstree {

GLVector gl_unit() { return GLVector(CanonicalTree()); }

GLVector gl_scaled_basis(const CanonicalTree& tree) {
    return GLVector(tree, Rational(1) / Rational(tree.aut_order()));
}

namespace {

// Every way of grafting `branches` onto vertices of `base`, with multiplicity.
LinearCombination<CanonicalTree> graft(std::span<const CanonicalTree> branches, const CanonicalTree& base) {
    LinearCombination<CanonicalTree> out;
    if (branches.empty()) {
        out.add(base, 1);
        return out;
    }
    FlatTree flat(base);
    const std::size_t v = flat.size();
    std::vector<std::vector<CanonicalTree>> extra(v);
    std::function<CanonicalTree(int)> build = [&](int vertex) {
        std::vector<CanonicalTree> kids;
        for (int c : flat.children[vertex]) {
            kids.push_back(build(c));
        }
        kids.insert(kids.end(), extra[vertex].begin(), extra[vertex].end());
        return CanonicalTree::make(flat.label[vertex], std::move(kids));
    };
    std::function<void(std::size_t)> assign = [&](std::size_t i) {
        if (i == branches.size()) {
            out.add(build(0), 1);
            return;
        }
        for (std::size_t target = 0; target < v; ++target) {
            extra[target].push_back(branches[i]);
            assign(i + 1);
            extra[target].pop_back();
        }
    };
    assign(0);
    return out;
}

class ProductCache {
public:
    GLVector get(const CanonicalTree& a, const CanonicalTree& b) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find({a, b}); it != cache_.end()) {
                return it->second;
            }
        }
        GLVector value = graft(a.children(), b);
        std::lock_guard lock(mutex_);
        cache_.emplace(std::make_pair(a, b), value);
        return value;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<CanonicalTree, CanonicalTree>, GLVector> cache_;
};

ProductCache& product_cache() {
    static ProductCache cache;
    return cache;
}

void require_gl(const CanonicalTree& t) {
    if (t.label() != 0) {
        throw InvalidLabel("Grossman-Larson basis trees have root label 0: " + t.to_string());
    }
}

} // namespace

GLVector gl_product(const CanonicalTree& a, const CanonicalTree& b) {
    require_gl(a);
    require_gl(b);
    return product_cache().get(a, b);
}

GLVector gl_product(const GLVector& a, const GLVector& b) {
    GLVector out;
    for (const auto& [ta, ca] : a) {
        for (const auto& [tb, cb] : b) {
            out.add(gl_product(ta, tb), ca * cb);
        }
    }
    return out;
}

GLTensor gl_coproduct(const CanonicalTree& tree) {
    require_gl(tree);
    auto kids = tree.children();
    const std::size_t m = kids.size();
    if (m > 30) {
        throw Error("too many root branches for the coproduct");
    }
    GLTensor out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<CanonicalTree> left, right;
        for (std::size_t i = 0; i < m; ++i) {
            (mask >> i & 1U ? left : right).push_back(kids[i]);
        }
        out.add({CanonicalTree::make(0, std::move(left)), CanonicalTree::make(0, std::move(right))}, 1);
    }
    return out;
}

GLTensor gl_coproduct(const GLVector& a) {
    GLTensor out;
    for (const auto& [t, c] : a) {
        out.add(gl_coproduct(t), c);
    }
    return out;
}

Rational gl_counit(const GLVector& a) { return a.coefficient(CanonicalTree()); }

GLVector gl_antipode(const CanonicalTree& tree) {
    require_gl(tree);
    static std::mutex mutex;
    static std::map<CanonicalTree, GLVector> memo;
    {
        std::lock_guard lock(mutex);
        if (auto it = memo.find(tree); it != memo.end()) {
            return it->second;
        }
    }
    GLVector out;
    if (tree.is_singleton()) {
        out = gl_unit();
    } else {
        out.add(tree, -1);
        for (const auto& [pair, c] : gl_coproduct(tree)) {
            const auto& [left, right] = pair;
            if (left.is_singleton() || right.is_singleton()) {
                continue;
            }
            out.add(gl_product(gl_antipode(left), GLVector(right)), -c);
        }
    }
    std::lock_guard lock(mutex);
    memo.emplace(tree, out);
    return out;
}

GLVector gl_antipode(const GLVector& a) {
    GLVector out;
    for (const auto& [t, c] : a) {
        out.add(gl_antipode(t), c);
    }
    return out;
}

LinearCombination<CanonicalTree> gl_act_on_tree(const GLVector& a, const CanonicalTree& tree) {
    if (tree.label() == 0) {
        throw InvalidLabel("the module action needs a tree with a labeled root");
    }
    LinearCombination<CanonicalTree> out;
    for (const auto& [t, c] : a) {
        require_gl(t);
        out.add(graft(t.children(), tree), c);
    }
    return out;
}

GLTensor gl_tensor_product(const GLTensor& a, const GLTensor& b) {
    GLTensor out;
    for (const auto& [pa, ca] : a) {
        for (const auto& [pb, cb] : b) {
            GLVector left = gl_product(pa.first, pb.first);
            GLVector right = gl_product(pa.second, pb.second);
            for (const auto& [l, cl] : left) {
                for (const auto& [r, cr] : right) {
                    out.add({l, r}, ca * cb * cl * cr);
                }
            }
        }
    }
    return out;
}

GLVector gl_truncate(const GLVector& a, unsigned max_weight) {
    GLVector out;
    for (const auto& [t, c] : a) {
        if (t.weight() <= max_weight) {
            out.add(t, c);
        }
    }
    return out;
}

std::string format_gl(const GLVector& a) {
    return format_combination(a, [](const CanonicalTree& t) { return t.to_string(); });
}

GLVector parse_gl(std::string_view text) {
    return parse_combination<CanonicalTree>(text, CanonicalTree(), [](std::string_view s, std::size_t& pos) {
        std::size_t at = pos;
        if (s[pos] != '(') {
            throw ParseError("expected tree literal", pos);
        }
        CanonicalTree t = parse_tree_at(s, pos);
        if (t.label() != 0) {
            throw ParseError("Grossman-Larson trees need root label 0", at + 1);
        }
        return t;
    });
}

std::string format_gl_tensor(const GLTensor& a) {
    return format_combination(a, [](const std::pair<CanonicalTree, CanonicalTree>& p) {
        return p.first.to_string() + " ⊗ " + p.second.to_string();
    });
}

} // namespace ncstree
