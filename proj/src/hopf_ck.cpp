#include "ncstree/hopf_ck.hpp"

#include <cctype>
#include <map>
#include <mutex>

#include "ncstree/errors.hpp"
#include "ncstree/lincomb_io.hpp"

namespace ncstree {

CKVector ck_unit() { return CKVector(Forest()); }

CKVector ck_product(const CKVector& a, const CKVector& b) {
    CKVector out;
    for (const auto& [fa, ca] : a) {
        for (const auto& [fb, cb] : b) {
            out.add(fa * fb, ca * cb);
        }
    }
    return out;
}

namespace {

CKTensor tree_coproduct(const CanonicalTree& tree) {
    CKTensor out;
    out.add({Forest({tree}), Forest()}, 1);
    for (const auto& cut : admissible_cuts(tree)) {
        out.add({cut.pruned, Forest({cut.remainder})}, 1);
    }
    return out;
}

} // namespace

CKTensor ck_tensor_product(const CKTensor& a, const CKTensor& b) {
    CKTensor out;
    for (const auto& [pa, ca] : a) {
        for (const auto& [pb, cb] : b) {
            out.add({pa.first * pb.first, pa.second * pb.second}, ca * cb);
        }
    }
    return out;
}

CKTensor ck_coproduct(const Forest& forest) {
    CKTensor out;
    out.add({Forest(), Forest()}, 1);
    for (const auto& t : forest.trees()) {
        out = ck_tensor_product(out, tree_coproduct(t));
    }
    return out;
}

CKTensor ck_coproduct(const CKVector& a) {
    CKTensor out;
    for (const auto& [f, c] : a) {
        out.add(ck_coproduct(f), c);
    }
    return out;
}

Rational ck_counit(const CKVector& a) { return a.coefficient(Forest()); }

namespace {

CKVector tree_antipode(const CanonicalTree& tree) {
    static std::mutex mutex;
    static std::map<CanonicalTree, CKVector> memo;
    {
        std::lock_guard lock(mutex);
        if (auto it = memo.find(tree); it != memo.end()) {
            return it->second;
        }
    }
    CKVector out;
    out.add(Forest({tree}), -1);
    for (const auto& cut : admissible_cuts(tree)) {
        if (cut.pruned.empty()) {
            continue;
        }
        out.add(ck_product(ck_antipode(cut.pruned), CKVector(Forest({cut.remainder}))), -1);
    }
    std::lock_guard lock(mutex);
    memo.emplace(tree, out);
    return out;
}

} // namespace

CKVector ck_antipode(const Forest& forest) {
    CKVector out = ck_unit();
    for (const auto& t : forest.trees()) {
        out = ck_product(out, tree_antipode(t));
    }
    return out;
}

CKVector ck_antipode(const CKVector& a) {
    CKVector out;
    for (const auto& [f, c] : a) {
        out.add(ck_antipode(f), c);
    }
    return out;
}

Rational pairing(const CanonicalTree& tree, const Forest& forest) {
    if (tree.label() != 0) {
        throw InvalidLabel("the pairing expects a Grossman-Larson tree");
    }
    return tree == b_plus(forest) ? Rational(tree.aut_order()) : Rational(0);
}

Rational pairing(const GLVector& x, const CKVector& c) {
    Rational out = 0;
    for (const auto& [t, ct] : x) {
        if (ct == 0) {
            continue;
        }
        Forest f = b_minus(t);
        out += ct * c.coefficient(f) * Rational(t.aut_order());
    }
    return out;
}

Rational pairing(const GLTensor& x, const CKTensor& c) {
    Rational out = 0;
    for (const auto& [p, cx] : x) {
        Rational cc = c.coefficient({b_minus(p.first), b_minus(p.second)});
        if (cc != 0) {
            out += cx * cc * Rational(p.first.aut_order()) * Rational(p.second.aut_order());
        }
    }
    return out;
}

std::string format_ck(const CKVector& a) {
    return format_combination(a, [](const Forest& f) { return "[" + (f.empty() ? std::string() : f.to_string()) + "]"; });
}

CKVector parse_ck(std::string_view text) {
    return parse_combination<Forest>(text, Forest(), [](std::string_view s, std::size_t& pos) {
        auto skip = [&] {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
                ++pos;
            }
        };
        bool bracketed = s[pos] == '[';
        if (bracketed) {
            ++pos;
        }
        std::vector<CanonicalTree> trees;
        skip();
        while (pos < s.size() && s[pos] == '(') {
            std::size_t at = pos;
            CanonicalTree t = parse_tree_at(s, pos);
            if (t.label() == 0) {
                throw ParseError("forest trees must have nonzero root labels", at + 1);
            }
            trees.push_back(std::move(t));
            skip();
        }
        if (bracketed) {
            if (pos >= s.size() || s[pos] != ']') {
                throw ParseError("expected ']'", pos);
            }
            ++pos;
        }
        return Forest(std::move(trees));
    });
}

std::string format_ck_tensor(const CKTensor& a) {
    return format_combination(a, [](const std::pair<Forest, Forest>& p) {
        auto show = [](const Forest& f) { return "[" + (f.empty() ? std::string() : f.to_string()) + "]"; };
        return show(p.first) + " ⊗ " + show(p.second);
    });
}

} // namespace ncstree
