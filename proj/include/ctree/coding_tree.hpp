#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctree/label.hpp"

namespace ctree {

using VertexId = std::size_t;

struct Vertex {
    Label label;
    int level = 0;
    /// Ordered by the sibling order; when `right_child` is set it is the last entry.
    std::vector<VertexId> children;
    std::optional<VertexId> right_child;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// A finite levelled labelled tree. Instances are immutable; isomorphism codes
/// are computed once at construction.
///
/// The constructor only insists on a well-formed graph (ids in range, no
/// cycles). Everything else, including single-parenthood, is reported by
/// `validate`, so invalid trees can be represented and diagnosed.
class CodingTree {
public:
    CodingTree(std::vector<Vertex> vertices, VertexId root);

    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
    std::size_t size() const noexcept { return vertices_.size(); }
    VertexId root() const noexcept { return root_; }
    int height() const { return vertices_[root_].level; }

    const Label& label(VertexId v) const { return vertex(v).label; }
    int level(VertexId v) const { return vertex(v).level; }
    bool is_leaf(VertexId v) const { return vertex(v).children.empty(); }
    const std::vector<VertexId>& parents(VertexId v) const { return parents_.at(v); }
    std::vector<VertexId> left_children(VertexId v) const;

    /// Vertices at `level`, in id order.
    std::vector<VertexId> level_vertices(int level) const;

    /// Canonical isomorphism code of the subtree rooted at `v`.
    const std::string& code(VertexId v) const { return codes_.at(v); }

    friend bool operator==(const CodingTree& a, const CodingTree& b) {
        return a.root_ == b.root_ && a.vertices_ == b.vertices_;
    }

private:
    std::vector<Vertex> vertices_;
    VertexId root_;
    std::vector<std::vector<VertexId>> parents_;
    std::vector<std::string> codes_;
};

/// Incremental construction helper. Vertices are numbered in insertion order.
class TreeBuilder {
public:
    VertexId add(Label label, int level);
    void add_left(VertexId parent, VertexId child);
    /// Appends `child` as the last child and designates it the right child.
    void add_right(VertexId parent, VertexId child);
    /// Copies the subtree of `src` rooted at `v` in preorder, shifting levels.
    VertexId copy_subtree(const CodingTree& src, VertexId v, int level_shift = 0);

    CodingTree build(VertexId root) &&;

private:
    std::vector<Vertex> vertices_;
};

struct Violation {
    std::string invariant;  // "V1" .. "V7"
    std::vector<VertexId> vertices;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(std::string_view invariant) const;
};

ValidationReport validate(const CodingTree& t);

const std::string& iso_code(const CodingTree& t, VertexId v);

/// The isomorphism t1 -> t2 indexed by t1 vertex id, or nullopt.
std::optional<std::vector<VertexId>> tree_iso(const CodingTree& t1, const CodingTree& t2);

/// Subtrees rooted at the left children of a vertex.
struct Forest {
    std::vector<VertexId> roots;
    /// Multiset code: sorted root codes.
    std::string code;
};

Forest left_forest(const CodingTree& t, VertexId v);

struct LevelSignature {
    int level = 0;
    std::string label_class;
    std::string left_forest_code;

    friend bool operator==(const LevelSignature&, const LevelSignature&) = default;
};

/// Per-level (label class, left forest code), root level first.
struct Signature {
    std::vector<LevelSignature> levels;

    friend bool operator==(const Signature&, const Signature&) = default;
};

Signature signature(const CodingTree& t);
std::string to_string(const Signature& s);

bool lower_isomorphic(const CodingTree& t1, const CodingTree& t2);

/// Merges isomorphic left siblings bottom-up, relabelling Q_n / Qd_n parents
/// by the number of surviving classes. Output is renumbered in preorder.
CodingTree canonicalize(const CodingTree& t);

/// Cuts the tree at `level`: vertices there become singleton leaves and the
/// levels below are dropped. The result is canonicalized.
CodingTree truncate(const CodingTree& t, int level);

}  // namespace ctree
