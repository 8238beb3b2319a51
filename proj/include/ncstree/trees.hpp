#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncstree/rational.hpp"

namespace ncstree {

/// Unordered labeled rooted tree as typed by a user; children in any order.
struct RawTree {
    unsigned label = 0;
    std::vector<RawTree> children;
};

/// Immutable labeled rooted tree in canonical form.
///
/// Children are kept sorted by the canonical total order, which compares
/// (weight, vertex count, root label, children lexicographically). Two trees
/// are isomorphic as labeled rooted trees iff they compare equal. Label 0 is
/// permitted only at the root; it marks elements of the Grossman-Larson basis
/// (a forest grafted onto an unweighted root).
///
/// Copies share structure, so passing trees by value is cheap.
class CanonicalTree {
public:
    /// The singleton with label 0, i.e. B+ of the empty forest.
    CanonicalTree();

    /// Throws InvalidLabel if some child carries label 0 anywhere.
    static CanonicalTree make(unsigned label, std::vector<CanonicalTree> children = {});

    unsigned label() const { return node_->label; }
    std::span<const CanonicalTree> children() const { return node_->children; }
    /// Sum of labels; a root labeled 0 contributes nothing.
    unsigned weight() const { return node_->weight; }
    unsigned vertex_count() const { return node_->vertices; }
    unsigned height() const { return node_->height; }
    /// Order of the label- and root-preserving automorphism group.
    const Integer& aut_order() const { return node_->aut; }
    std::size_t hash() const { return node_->hash; }

    bool is_singleton() const { return node_->children.empty(); }
    /// Root has exactly one child.
    bool is_primitive() const { return node_->children.size() == 1; }
    /// Single leaf.
    bool is_chain() const;
    /// Height one.
    bool is_shrub() const { return node_->height == 1; }
    std::size_t root_children() const { return node_->children.size(); }

    CanonicalTree with_root_label(unsigned label) const;
    /// Same shape with every label replaced by `label` (root keeps its label if 0).
    CanonicalTree unlabeled(unsigned label = 1) const;

    /// Tree literal `(label child*)`, children in canonical order.
    std::string to_string() const;

    friend std::strong_ordering operator<=>(const CanonicalTree& a, const CanonicalTree& b);
    friend bool operator==(const CanonicalTree& a, const CanonicalTree& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }

private:
    struct Node {
        unsigned label = 0;
        std::vector<CanonicalTree> children;
        unsigned weight = 0;
        unsigned vertices = 1;
        unsigned height = 0;
        Integer aut = 1;
        std::size_t hash = 0;
    };

    explicit CanonicalTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct CanonicalTreeHash {
    std::size_t operator()(const CanonicalTree& t) const { return t.hash(); }
};

/// Multiset of trees, canonically sorted. The empty forest is the unit of H_CK.
class Forest {
public:
    Forest() = default;
    explicit Forest(std::vector<CanonicalTree> trees);

    std::span<const CanonicalTree> trees() const { return trees_; }
    std::size_t size() const { return trees_.size(); }
    bool empty() const { return trees_.empty(); }
    unsigned weight() const;
    unsigned vertex_count() const;

    /// Disjoint union.
    friend Forest operator*(const Forest& a, const Forest& b);

    /// Space-separated tree literals; empty forest prints as "1".
    std::string to_string() const;

    friend auto operator<=>(const Forest&, const Forest&) = default;
    friend bool operator==(const Forest&, const Forest&) = default;

private:
    std::vector<CanonicalTree> trees_;
};

CanonicalTree canonicalize(const RawTree& raw);

/// Parses `tree ::= '(' label tree* ')'`; whitespace-insensitive.
CanonicalTree parse_tree(std::string_view text);
/// Parses one tree starting at `pos` (leading whitespace allowed) and advances `pos` past it.
CanonicalTree parse_tree_at(std::string_view text, std::size_t& pos);
/// Parses `forest ::= tree*`; also accepts the literal "1" or "[]" for the empty forest.
Forest parse_forest(std::string_view text);

/// Root labeled `root_label` with the trees of `forest` as children.
CanonicalTree b_plus(const Forest& forest, unsigned root_label = 0);
/// Cuts off the root. Throws Error on an empty tree, which cannot be represented here.
Forest b_minus(const CanonicalTree& tree);

/// One representative of every isomorphism class of W-labeled trees (nonzero
/// root label) with 1 <= weight <= max_weight, sorted canonically.
std::vector<CanonicalTree> enumerate_trees(const std::set<unsigned>& labels, unsigned max_weight);
/// All W-labeled forests of weight <= max_weight, the empty forest first.
std::vector<Forest> enumerate_forests(const std::set<unsigned>& labels, unsigned max_weight);
/// B+ of every forest of weight <= max_weight: the basis of H_GL up to that weight.
std::vector<CanonicalTree> enumerate_gl_basis(const std::set<unsigned>& labels, unsigned max_weight);

/// Path of child indices (canonical order) from the root to a vertex; the edge
/// above a vertex is named by the vertex's address.
using EdgeAddress = std::vector<std::size_t>;

struct Cut {
    std::vector<EdgeAddress> edges;
};

struct CutResult {
    Cut cut;
    Forest pruned;            ///< P_C(T)
    CanonicalTree remainder;  ///< R_C(T), the component containing the root
};

/// All admissible cuts, the empty cut first.
std::vector<CutResult> admissible_cuts(const CanonicalTree& tree);

/// A chain C_1 > ... > C_r of cuts together with the derived trees
/// B+(P_{C_1}(S_0)), ..., B+(P_{C_r}(S_{r-1})) and the final remainder S_r,
/// where S_0 = T and S_i = R_{C_i}(S_{i-1}).
struct CutChain {
    std::vector<Cut> cuts;
    std::vector<CanonicalTree> pieces;  ///< r + 1 entries
};

/// Enumerates every chain of r admissible cuts (or r single edges when
/// `single_edge_only`) in which each cut lies in the remainder of the previous ones.
std::vector<CutChain> descending_cut_chains(const CanonicalTree& tree, unsigned r, bool single_edge_only);

/// Flattened preorder view of a canonical tree, used by the cut machinery and
/// by code that needs vertex identities.
struct FlatTree {
    std::vector<int> parent;                 ///< parent[0] = -1
    std::vector<unsigned> label;
    std::vector<std::vector<int>> children;  ///< canonical child order
    std::vector<std::uint64_t> descendants;  ///< bitmask including the vertex itself

    explicit FlatTree(const CanonicalTree& tree);
    std::size_t size() const { return parent.size(); }
    EdgeAddress address(int vertex) const;
    /// Subtree rooted at `vertex` restricted to vertices in `keep`.
    CanonicalTree subtree(int vertex, std::uint64_t keep) const;
};

} // namespace ncstree
