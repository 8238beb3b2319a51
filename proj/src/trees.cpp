#include "ncstree/trees.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>

#include "ncstree/errors.hpp"

namespace ncstree {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

CanonicalTree::CanonicalTree() : node_(std::make_shared<const Node>()) {}

CanonicalTree CanonicalTree::make(unsigned label, std::vector<CanonicalTree> children) {
    auto node = std::make_shared<Node>();
    node->label = label;
    std::sort(children.begin(), children.end());
    node->weight = label;
    node->vertices = 1;
    node->height = 0;
    node->hash = hash_combine(0x51ed27, label);
    for (std::size_t i = 0; i < children.size();) {
        const auto& c = children[i];
        if (c.label() == 0) {
            throw InvalidLabel("label 0 is only allowed at the root");
        }
        std::size_t j = i;
        while (j < children.size() && children[j] == c) {
            ++j;
        }
        unsigned mult = static_cast<unsigned>(j - i);
        Integer pow;
        mpz_pow_ui(pow.get_mpz_t(), c.aut_order().get_mpz_t(), mult);
        node->aut *= factorial(mult) * pow;
        i = j;
    }
    for (const auto& c : children) {
        node->weight += c.weight();
        node->vertices += c.vertex_count();
        node->height = std::max(node->height, c.height() + 1);
        node->hash = hash_combine(node->hash, c.hash());
    }
    node->children = std::move(children);
    return CanonicalTree(std::move(node));
}

bool CanonicalTree::is_chain() const {
    const CanonicalTree* t = this;
    while (!t->is_singleton()) {
        if (t->root_children() != 1) {
            return false;
        }
        t = &t->children()[0];
    }
    return true;
}

CanonicalTree CanonicalTree::with_root_label(unsigned new_label) const {
    if (new_label == label()) {
        return *this;
    }
    return make(new_label, {children().begin(), children().end()});
}

CanonicalTree CanonicalTree::unlabeled(unsigned new_label) const {
    std::vector<CanonicalTree> kids;
    kids.reserve(root_children());
    for (const auto& c : children()) {
        kids.push_back(c.unlabeled(new_label));
    }
    return make(label() == 0 ? 0 : new_label, std::move(kids));
}

std::string CanonicalTree::to_string() const {
    std::string out = "(" + std::to_string(label());
    for (const auto& c : children()) {
        out += ' ';
        out += c.to_string();
    }
    out += ')';
    return out;
}

std::strong_ordering operator<=>(const CanonicalTree& a, const CanonicalTree& b) {
    if (a.node_ == b.node_) {
        return std::strong_ordering::equal;
    }
    if (auto c = a.weight() <=> b.weight(); c != 0) {
        return c;
    }
    if (auto c = a.vertex_count() <=> b.vertex_count(); c != 0) {
        return c;
    }
    if (auto c = a.label() <=> b.label(); c != 0) {
        return c;
    }
    return std::lexicographical_compare_three_way(a.node_->children.begin(), a.node_->children.end(),
                                                  b.node_->children.begin(), b.node_->children.end());
}

Forest::Forest(std::vector<CanonicalTree> trees) : trees_(std::move(trees)) {
    for (const auto& t : trees_) {
        if (t.label() == 0) {
            throw InvalidLabel("forest trees must have nonzero root labels");
        }
    }
    std::sort(trees_.begin(), trees_.end());
}

unsigned Forest::weight() const {
    unsigned w = 0;
    for (const auto& t : trees_) {
        w += t.weight();
    }
    return w;
}

unsigned Forest::vertex_count() const {
    unsigned v = 0;
    for (const auto& t : trees_) {
        v += t.vertex_count();
    }
    return v;
}

Forest operator*(const Forest& a, const Forest& b) {
    std::vector<CanonicalTree> all(a.trees_.begin(), a.trees_.end());
    all.insert(all.end(), b.trees_.begin(), b.trees_.end());
    return Forest(std::move(all));
}

std::string Forest::to_string() const {
    if (trees_.empty()) {
        return "1";
    }
    std::string out;
    for (const auto& t : trees_) {
        if (!out.empty()) {
            out += ' ';
        }
        out += t.to_string();
    }
    return out;
}

CanonicalTree canonicalize(const RawTree& raw) {
    std::vector<CanonicalTree> kids;
    kids.reserve(raw.children.size());
    for (const auto& c : raw.children) {
        if (c.label == 0) {
            throw InvalidLabel("non-root vertex with label 0");
        }
        kids.push_back(canonicalize(c));
    }
    return CanonicalTree::make(raw.label, std::move(kids));
}

namespace {

class TreeParser {
public:
    explicit TreeParser(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) {
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
        ++pos_;
    }

    RawTree tree() {
        expect('(');
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ == start) {
            throw ParseError("expected label", start);
        }
        RawTree out;
        out.label = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
        while (peek('(')) {
            std::size_t child_pos = pos_;
            out.children.push_back(tree());
            if (out.children.back().label == 0) {
                throw ParseError("label 0 is only allowed at the root", child_pos + 1);
            }
        }
        expect(')');
        return out;
    }

    std::size_t position() const { return pos_; }
    void set_position(std::size_t p) { pos_ = p; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

CanonicalTree parse_tree(std::string_view text) {
    TreeParser p(text);
    RawTree raw = p.tree();
    if (!p.at_end()) {
        throw ParseError("trailing characters after tree", p.position());
    }
    return canonicalize(raw);
}

CanonicalTree parse_tree_at(std::string_view text, std::size_t& pos) {
    TreeParser p(text);
    p.set_position(pos);
    RawTree raw = p.tree();
    pos = p.position();
    return canonicalize(raw);
}

Forest parse_forest(std::string_view text) {
    TreeParser p(text);
    bool bracketed = false;
    if (p.peek('[')) {
        p.expect('[');
        bracketed = true;
    } else if (p.peek('1')) {
        p.expect('1');
        if (!p.at_end()) {
            throw ParseError("trailing characters after empty forest", p.position());
        }
        return Forest();
    }
    std::vector<CanonicalTree> trees;
    while (p.peek('(')) {
        std::size_t at = p.position();
        RawTree raw = p.tree();
        if (raw.label == 0) {
            throw ParseError("forest trees must have nonzero root labels", at + 1);
        }
        trees.push_back(canonicalize(raw));
    }
    if (bracketed) {
        p.expect(']');
    }
    if (!p.at_end()) {
        throw ParseError("unexpected character in forest", p.position());
    }
    return Forest(std::move(trees));
}

CanonicalTree b_plus(const Forest& forest, unsigned root_label) {
    return CanonicalTree::make(root_label, {forest.trees().begin(), forest.trees().end()});
}

Forest b_minus(const CanonicalTree& tree) {
    return Forest({tree.children().begin(), tree.children().end()});
}

namespace {

// Multisets drawn from `pool` (sorted) with total weight `target`, indices nondecreasing.
void forests_of_weight(const std::vector<CanonicalTree>& pool, unsigned target, std::size_t start,
                       std::vector<CanonicalTree>& current, std::vector<std::vector<CanonicalTree>>& out) {
    if (target == 0) {
        out.push_back(current);
        return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
        if (pool[i].weight() > target) {
            break;
        }
        current.push_back(pool[i]);
        forests_of_weight(pool, target - pool[i].weight(), i, current, out);
        current.pop_back();
    }
}

// Trees grouped by weight: result[w] holds all trees of weight w (w >= 1).
std::vector<std::vector<CanonicalTree>> trees_by_weight(const std::set<unsigned>& labels, unsigned max_weight) {
    std::vector<std::vector<CanonicalTree>> by_weight(max_weight + 1);
    std::vector<CanonicalTree> pool;  // all trees of weight < w, sorted
    for (unsigned w = 1; w <= max_weight; ++w) {
        for (unsigned label : labels) {
            if (label == 0 || label > w) {
                continue;
            }
            std::vector<std::vector<CanonicalTree>> forests;
            std::vector<CanonicalTree> current;
            forests_of_weight(pool, w - label, 0, current, forests);
            for (auto& f : forests) {
                by_weight[w].push_back(CanonicalTree::make(label, std::move(f)));
            }
        }
        std::sort(by_weight[w].begin(), by_weight[w].end());
        pool.insert(pool.end(), by_weight[w].begin(), by_weight[w].end());
    }
    return by_weight;
}

} // namespace

std::vector<CanonicalTree> enumerate_trees(const std::set<unsigned>& labels, unsigned max_weight) {
    std::vector<CanonicalTree> out;
    for (auto& group : trees_by_weight(labels, max_weight)) {
        out.insert(out.end(), group.begin(), group.end());
    }
    return out;
}

std::vector<Forest> enumerate_forests(const std::set<unsigned>& labels, unsigned max_weight) {
    std::vector<CanonicalTree> pool = enumerate_trees(labels, max_weight);
    std::vector<Forest> out;
    for (unsigned w = 0; w <= max_weight; ++w) {
        std::vector<std::vector<CanonicalTree>> forests;
        std::vector<CanonicalTree> current;
        forests_of_weight(pool, w, 0, current, forests);
        std::vector<Forest> level;
        level.reserve(forests.size());
        for (auto& f : forests) {
            level.emplace_back(std::move(f));
        }
        std::sort(level.begin(), level.end());
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::vector<CanonicalTree> enumerate_gl_basis(const std::set<unsigned>& labels, unsigned max_weight) {
    std::vector<CanonicalTree> out;
    for (const auto& f : enumerate_forests(labels, max_weight)) {
        out.push_back(b_plus(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

FlatTree::FlatTree(const CanonicalTree& tree) {
    if (tree.vertex_count() > 64) {
        throw Error("trees with more than 64 vertices are not supported by the cut machinery");
    }
    std::function<int(const CanonicalTree&, int)> visit = [&](const CanonicalTree& t, int par) {
        int id = static_cast<int>(parent.size());
        parent.push_back(par);
        label.push_back(t.label());
        children.emplace_back();
        descendants.push_back(0);
        for (const auto& c : t.children()) {
            int cid = visit(c, id);
            children[id].push_back(cid);
        }
        return id;
    };
    visit(tree, -1);
    for (int v = static_cast<int>(size()) - 1; v >= 0; --v) {
        descendants[v] |= std::uint64_t{1} << v;
        if (parent[v] >= 0) {
            descendants[parent[v]] |= descendants[v];
        }
    }
}

EdgeAddress FlatTree::address(int vertex) const {
    EdgeAddress path;
    for (int v = vertex; parent[v] >= 0; v = parent[v]) {
        const auto& sib = children[parent[v]];
        path.push_back(static_cast<std::size_t>(std::find(sib.begin(), sib.end(), v) - sib.begin()));
    }
    std::reverse(path.begin(), path.end());
    return path;
}

CanonicalTree FlatTree::subtree(int vertex, std::uint64_t keep) const {
    std::vector<CanonicalTree> kids;
    for (int c : children[vertex]) {
        if (keep >> c & 1U) {
            kids.push_back(subtree(c, keep));
        }
    }
    return CanonicalTree::make(label[vertex], std::move(kids));
}

namespace {

// Admissible cuts among the edges above vertices in `alive` (vertex 0 excluded),
// as bitmasks of child vertices. The empty cut comes first.
std::vector<std::uint64_t> admissible_masks(const FlatTree& flat, std::uint64_t alive) {
    std::vector<std::uint64_t> out;
    std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec = [&](std::size_t v, std::uint64_t cut,
                                                                             std::uint64_t blocked) {
        while (v < flat.size() && (!(alive >> v & 1U) || (blocked >> v & 1U))) {
            ++v;
        }
        if (v >= flat.size()) {
            out.push_back(cut);
            return;
        }
        rec(v + 1, cut, blocked);
        rec(v + 1, cut | (std::uint64_t{1} << v), blocked | flat.descendants[v]);
    };
    rec(1, 0, 0);
    return out;
}

Cut make_cut(const FlatTree& flat, std::uint64_t mask) {
    Cut cut;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
        cut.edges.push_back(flat.address(std::countr_zero(m)));
    }
    return cut;
}

std::uint64_t below(const FlatTree& flat, std::uint64_t mask) {
    std::uint64_t out = 0;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
        out |= flat.descendants[std::countr_zero(m)];
    }
    return out;
}

Forest pruned_forest(const FlatTree& flat, std::uint64_t mask, std::uint64_t alive) {
    std::vector<CanonicalTree> trees;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
        trees.push_back(flat.subtree(std::countr_zero(m), alive));
    }
    return Forest(std::move(trees));
}

std::uint64_t all_vertices(const FlatTree& flat) {
    return flat.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << flat.size()) - 1;
}

} // namespace

std::vector<CutResult> admissible_cuts(const CanonicalTree& tree) {
    FlatTree flat(tree);
    const std::uint64_t all = all_vertices(flat);
    std::vector<CutResult> out;
    for (std::uint64_t mask : admissible_masks(flat, all)) {
        out.push_back({make_cut(flat, mask), pruned_forest(flat, mask, all), flat.subtree(0, all & ~below(flat, mask))});
    }
    return out;
}

std::vector<CutChain> descending_cut_chains(const CanonicalTree& tree, unsigned r, bool single_edge_only) {
    FlatTree flat(tree);
    std::vector<CutChain> out;
    CutChain current;
    std::function<void(unsigned, std::uint64_t)> rec = [&](unsigned depth, std::uint64_t alive) {
        if (depth == r) {
            current.pieces.push_back(flat.subtree(0, alive));
            out.push_back(current);
            current.pieces.pop_back();
            return;
        }
        std::vector<std::uint64_t> choices;
        if (single_edge_only) {
            for (std::size_t v = 1; v < flat.size(); ++v) {
                if (alive >> v & 1U) {
                    choices.push_back(std::uint64_t{1} << v);
                }
            }
        } else {
            choices = admissible_masks(flat, alive);
        }
        for (std::uint64_t mask : choices) {
            current.cuts.push_back(make_cut(flat, mask));
            current.pieces.push_back(b_plus(pruned_forest(flat, mask, alive)));
            rec(depth + 1, alive & ~below(flat, mask));
            current.cuts.pop_back();
            current.pieces.pop_back();
        }
    };
    rec(0, all_vertices(flat));
    return out;
}

} // namespace ncstree
