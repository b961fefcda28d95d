#include "ctree/coding_tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "ctree/error.hpp"

namespace ctree {

namespace {

std::string join_sorted(std::vector<std::string> parts) {
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ',';
        out += parts[i];
    }
    return out;
}

std::string make_code(const std::string& label, int level, std::vector<std::string> left,
                      const std::string* right) {
    std::string code = label + "@" + std::to_string(level) + "(" + join_sorted(std::move(left)) + ")";
    if (right) code += "[" + *right + "]";
    return code;
}

}  // namespace

CodingTree::CodingTree(std::vector<Vertex> vertices, VertexId root)
    : vertices_(std::move(vertices)), root_(root) {
    const std::size_t n = vertices_.size();
    if (root_ >= n) throw Error(ErrorCode::InvalidInput, "root id out of range");

    parents_.assign(n, {});
    for (VertexId v = 0; v < n; ++v) {
        const Vertex& x = vertices_[v];
        for (VertexId c : x.children) {
            if (c >= n) throw Error(ErrorCode::InvalidInput, "child id out of range");
            parents_[c].push_back(v);
        }
        if (x.right_child &&
            std::find(x.children.begin(), x.children.end(), *x.right_child) == x.children.end()) {
            throw Error(ErrorCode::InvalidInput,
                        "right child of vertex " + std::to_string(v) + " is not among its children");
        }
    }

    // Kahn's algorithm from the leaves up; anything left over sits on a cycle.
    std::vector<std::size_t> pending(n);
    std::vector<VertexId> ready;
    for (VertexId v = 0; v < n; ++v) {
        pending[v] = vertices_[v].children.size();
        if (pending[v] == 0) ready.push_back(v);
    }
    codes_.assign(n, {});
    std::size_t done = 0;
    while (!ready.empty()) {
        VertexId v = ready.back();
        ready.pop_back();
        ++done;
        const Vertex& x = vertices_[v];
        std::vector<std::string> left;
        for (VertexId c : x.children)
            if (!x.right_child || c != *x.right_child) left.push_back(codes_[c]);
        codes_[v] = make_code(to_string(x.label), x.level, std::move(left),
                              x.right_child ? &codes_[*x.right_child] : nullptr);
        for (VertexId p : parents_[v])
            if (--pending[p] == 0) ready.push_back(p);
    }
    if (done != n) throw Error(ErrorCode::InvalidInput, "tree contains a cycle");
}

std::vector<VertexId> CodingTree::left_children(VertexId v) const {
    const Vertex& x = vertex(v);
    std::vector<VertexId> out;
    for (VertexId c : x.children)
        if (!x.right_child || c != *x.right_child) out.push_back(c);
    return out;
}

std::vector<VertexId> CodingTree::level_vertices(int level) const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < vertices_.size(); ++v)
        if (vertices_[v].level == level) out.push_back(v);
    return out;
}

VertexId TreeBuilder::add(Label label, int level) {
    vertices_.push_back(Vertex{label, level, {}, std::nullopt});
    return vertices_.size() - 1;
}

void TreeBuilder::add_left(VertexId parent, VertexId child) {
    vertices_.at(parent).children.push_back(child);
}

void TreeBuilder::add_right(VertexId parent, VertexId child) {
    Vertex& p = vertices_.at(parent);
    p.children.push_back(child);
    p.right_child = child;
}

VertexId TreeBuilder::copy_subtree(const CodingTree& src, VertexId v, int level_shift) {
    const Vertex& x = src.vertex(v);
    VertexId id = add(x.label, x.level + level_shift);
    for (VertexId c : x.children) {
        VertexId cc = copy_subtree(src, c, level_shift);
        if (x.right_child && c == *x.right_child)
            add_right(id, cc);
        else
            add_left(id, cc);
    }
    return id;
}

CodingTree TreeBuilder::build(VertexId root) && { return CodingTree(std::move(vertices_), root); }

bool ValidationReport::has(std::string_view invariant) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.invariant == invariant; });
}

ValidationReport validate(const CodingTree& t) {
    ValidationReport report;
    auto add = [&](std::string inv, std::vector<VertexId> vs, std::string msg) {
        report.violations.push_back({std::move(inv), std::move(vs), std::move(msg)});
    };
    const std::size_t n = t.size();

    // V1
    if (!t.parents(t.root()).empty()) add("V1", {t.root()}, "root has a parent");
    int max_level = 0;
    for (VertexId v = 0; v < n; ++v) {
        max_level = std::max(max_level, t.level(v));
        if (v == t.root()) continue;
        const auto& ps = t.parents(v);
        if (ps.empty()) add("V1", {v}, "vertex " + std::to_string(v) + " has no parent");
        if (ps.size() > 1) add("V1", {v}, "vertex " + std::to_string(v) + " has several parents");
    }
    if (t.height() != max_level) add("V1", {t.root()}, "root level is not the tree height");

    // V2
    for (VertexId v = 0; v < n; ++v) {
        const Vertex& x = t.vertex(v);
        for (VertexId c : x.children)
            if (t.level(c) + 1 != x.level)
                add("V2", {v, c}, "child level is not parent level minus one");
        if (x.children.empty() && x.level != 0) add("V2", {v}, "leaf above level 0");
        if (!x.children.empty() && x.level == 0) add("V2", {v}, "parent at level 0");
    }

    // V3
    for (VertexId v = 0; v < n; ++v) {
        const Vertex& x = t.vertex(v);
        if (x.children.size() != x.label.arity())
            add("V3", {v}, to_string(x.label) + " vertex has " + std::to_string(x.children.size()) +
                               " children, expected " + std::to_string(x.label.arity()));
        if (x.label.has_endpoint()) {
            if (!x.right_child || x.children.empty() || x.children.back() != *x.right_child)
                add("V3", {v}, "endpoint label without a last right child");
        } else if (x.right_child) {
            add("V3", {v}, "right child on a label without an endpoint");
        }
    }

    // V4 and V5, level by level
    for (int lvl = 0; lvl <= max_level; ++lvl) {
        auto vs = t.level_vertices(lvl);
        if (vs.empty()) continue;
        const std::string cls = label_class(t.label(vs.front()));
        std::vector<VertexId> bad_label;
        for (VertexId v : vs)
            if (label_class(t.label(v)) != cls) bad_label.push_back(v);
        if (!bad_label.empty()) {
            bad_label.insert(bad_label.begin(), vs.front());
            add("V4", bad_label, "labels at level " + std::to_string(lvl) + " are not lower-equivalent");
        }

        std::vector<VertexId> bad_forest;
        std::optional<std::string> forest;
        for (VertexId v : vs) {
            if (t.is_leaf(v)) continue;
            std::string code = left_forest(t, v).code;
            if (!forest)
                forest = code;
            else if (code != *forest)
                bad_forest.push_back(v);
        }
        if (!bad_forest.empty())
            add("V5", bad_forest, "left forests at level " + std::to_string(lvl) + " are not isomorphic");
    }

    // V6
    for (VertexId v = 0; v < n; ++v) {
        std::map<std::string, VertexId> seen;
        for (VertexId c : t.left_children(v)) {
            auto [it, inserted] = seen.emplace(t.code(c), c);
            if (!inserted) add("V6", {v, it->second, c}, "isomorphic left children");
        }
    }

    // V7 holds for any finite acyclic graph: every vertex is a leaf or above one.
    if (n == 0) add("V7", {}, "empty tree");
    return report;
}

const std::string& iso_code(const CodingTree& t, VertexId v) { return t.code(v); }

std::optional<std::vector<VertexId>> tree_iso(const CodingTree& t1, const CodingTree& t2) {
    if (t1.size() != t2.size() || t1.code(t1.root()) != t2.code(t2.root())) return std::nullopt;
    std::vector<VertexId> map(t1.size(), 0);
    std::function<void(VertexId, VertexId)> match = [&](VertexId a, VertexId b) {
        map[a] = b;
        const Vertex& x = t1.vertex(a);
        const Vertex& y = t2.vertex(b);
        if (x.right_child) match(*x.right_child, *y.right_child);
        auto rights = t2.left_children(b);
        std::vector<bool> used(rights.size(), false);
        for (VertexId c : t1.left_children(a)) {
            for (std::size_t k = 0; k < rights.size(); ++k) {
                if (!used[k] && t2.code(rights[k]) == t1.code(c)) {
                    used[k] = true;
                    match(c, rights[k]);
                    break;
                }
            }
        }
    };
    match(t1.root(), t2.root());
    return map;
}

Forest left_forest(const CodingTree& t, VertexId v) {
    if (t.is_leaf(v))
        throw Error(ErrorCode::NotAParent, "vertex " + std::to_string(v) + " is a leaf");
    Forest f;
    f.roots = t.left_children(v);
    std::vector<std::string> codes;
    for (VertexId c : f.roots) codes.push_back(t.code(c));
    f.code = "{" + join_sorted(std::move(codes)) + "}";
    return f;
}

Signature signature(const CodingTree& t) {
    if (!validate(t).ok()) throw Error(ErrorCode::InvalidTree, "signature of an invalid coding tree");
    Signature s;
    for (int lvl = t.height(); lvl >= 0; --lvl) {
        VertexId v = t.level_vertices(lvl).front();
        s.levels.push_back({lvl, label_class(t.label(v)), t.is_leaf(v) ? "{}" : left_forest(t, v).code});
    }
    return s;
}

std::string to_string(const Signature& s) {
    std::string out;
    for (const auto& l : s.levels)
        out += std::to_string(l.level) + ": " + l.label_class + " " + l.left_forest_code + "\n";
    return out;
}

bool lower_isomorphic(const CodingTree& t1, const CodingTree& t2) {
    return signature(t1) == signature(t2);
}

namespace {

Label relabel(const Label& label, std::size_t classes) {
    if (!label.is_coloured()) return label;
    const bool dot = label.kind == LabelKind::QnDot;
    if (classes >= 2) {
        const int k = static_cast<int>(classes);
        return dot ? Label::qndot(k) : Label::qn(k);
    }
    return dot ? Label::qdot() : Label::q();
}

class Canonicalizer {
public:
    explicit Canonicalizer(const CodingTree& t) : t_(t), codes_(t.size()) {}

    const std::string& code(VertexId v) {
        if (!codes_[v].empty()) return codes_[v];
        const Vertex& x = t_.vertex(v);
        std::set<std::string> left;
        for (VertexId c : t_.left_children(v)) left.insert(code(c));
        const std::string* right = x.right_child ? &code(*x.right_child) : nullptr;
        Label label = relabel(x.label, left.size());
        codes_[v] = make_code(to_string(label), x.level, {left.begin(), left.end()}, right);
        return codes_[v];
    }

    VertexId emit(TreeBuilder& b, VertexId v) {
        const Vertex& x = t_.vertex(v);
        std::vector<VertexId> kept;
        std::set<std::string> seen;
        for (VertexId c : t_.left_children(v))
            if (seen.insert(code(c)).second) kept.push_back(c);
        VertexId id = b.add(relabel(x.label, kept.size()), x.level);
        for (VertexId c : kept) b.add_left(id, emit(b, c));
        if (x.right_child) b.add_right(id, emit(b, *x.right_child));
        return id;
    }

private:
    const CodingTree& t_;
    std::vector<std::string> codes_;
};

}  // namespace

CodingTree canonicalize(const CodingTree& t) {
    auto report = validate(t);
    for (const auto& v : report.violations) {
        if (v.invariant != "V6")
            throw Error(ErrorCode::InvalidInput, "canonicalize needs V1-V5: " + v.message);
    }
    Canonicalizer c(t);
    TreeBuilder b;
    VertexId root = c.emit(b, t.root());
    return std::move(b).build(root);
}

CodingTree truncate(const CodingTree& t, int level) {
    if (level < 0 || level > t.height())
        throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(level) + " outside 0.." +
                                                    std::to_string(t.height()));
    if (level == 0) return t;
    TreeBuilder b;
    std::function<VertexId(VertexId)> emit = [&](VertexId v) {
        const Vertex& x = t.vertex(v);
        if (x.level == level) return b.add(Label::singleton(), 0);
        VertexId id = b.add(x.label, x.level - level);
        for (VertexId c : x.children) {
            VertexId cc = emit(c);
            if (x.right_child && c == *x.right_child)
                b.add_right(id, cc);
            else
                b.add_left(id, cc);
        }
        return id;
    };
    VertexId root = emit(t.root());
    return canonicalize(std::move(b).build(root));
}

}  // namespace ctree
