#pragma once

// Fixtures and independent oracles shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ctree/coding_tree.hpp"
#include "ctree/order_expr.hpp"

namespace support {

inline const std::vector<std::string> kZ3Class = {
    "Z^3",
    "w*.Z^2 + Z^2",
    "w*.Z^2 + w*.Z + Z",
    "w*.Z^2 + w*.Z + w*",
};

inline const std::vector<std::string> kZ2Class = {"Z^2", "w*.Z + Z", "w*.Z + w*"};

inline const std::vector<std::string> kQ2Class = {"Q_2(w*, Z)", "Q_2(w*, Z) + Z", "Q_2(w*, Z) + w*"};

// Dense and coloured shapes beyond the named classes.
inline const std::vector<std::string> kExtra = {
    "Q.1",
    "Q.Z",
    "Qd.Z + Z",
    "Q.Q_2(w*, Z)",
    "Q_3(Z^2, w*.Z + Z, w*.Z + w*)",
    "w*.(w*.Q_2(w*, Z) + Q_2(Z, w*)) + (w*.Q_2(Z, w*) + Q_2(w*, Z))",
};

inline std::vector<std::string> class_fixtures() {
    std::vector<std::string> out = kZ3Class;
    out.insert(out.end(), kZ2Class.begin(), kZ2Class.end());
    out.insert(out.end(), kQ2Class.begin(), kQ2Class.end());
    return out;
}

inline std::vector<std::string> all_fixtures() {
    std::vector<std::string> out = class_fixtures();
    out.insert(out.end(), kExtra.begin(), kExtra.end());
    return out;
}

// Backtracking isomorphism test that never looks at iso codes: roots must
// agree on label and level, right children pair up, and left children are
// matched by trying every bijection.
inline bool brute_iso(const ctree::CodingTree& a, ctree::VertexId u, const ctree::CodingTree& b,
                      ctree::VertexId v) {
    if (!(a.label(u) == b.label(v)) || a.level(u) != b.level(v)) return false;
    const auto& x = a.vertex(u);
    const auto& y = b.vertex(v);
    if (x.right_child.has_value() != y.right_child.has_value()) return false;
    if (x.right_child && !brute_iso(a, *x.right_child, b, *y.right_child)) return false;
    const auto la = a.left_children(u);
    const auto lb = b.left_children(v);
    if (la.size() != lb.size()) return false;
    std::vector<bool> used(lb.size(), false);
    std::function<bool(std::size_t)> match = [&](std::size_t i) {
        if (i == la.size()) return true;
        for (std::size_t j = 0; j < lb.size(); ++j) {
            if (used[j] || !brute_iso(a, la[i], b, lb[j])) continue;
            used[j] = true;
            if (match(i + 1)) return true;
            used[j] = false;
        }
        return false;
    };
    return match(0);
}

inline bool brute_iso(const ctree::CodingTree& a, const ctree::CodingTree& b) {
    return a.size() == b.size() && brute_iso(a, a.root(), b, b.root());
}

inline ctree::Label widen(const ctree::Label& l, int extra) {
    using ctree::Label;
    using ctree::LabelKind;
    switch (l.kind) {
        case LabelKind::Q: return Label::qn(1 + extra);
        case LabelKind::QDot: return Label::qndot(1 + extra);
        case LabelKind::Qn: return Label::qn(l.n + extra);
        case LabelKind::QnDot: return Label::qndot(l.n + extra);
        default: return l;
    }
}

// Copies t, and at every vertex of `level` duplicates the left children whose
// code is `code` `extra` more times, widening the label to match. The result
// breaks only the pairwise non-isomorphism of left siblings.
inline ctree::CodingTree duplicate_left_children(const ctree::CodingTree& t, int level, const std::string& code,
                                                 int extra) {
    ctree::TreeBuilder b;
    std::function<ctree::VertexId(ctree::VertexId)> rebuild = [&](ctree::VertexId v) {
        const bool hit = t.level(v) == level;
        const ctree::VertexId nv = b.add(hit ? widen(t.label(v), extra) : t.label(v), t.level(v));
        for (ctree::VertexId c : t.left_children(v)) {
            b.add_left(nv, rebuild(c));
            if (hit && t.code(c) == code)
                for (int k = 0; k < extra; ++k) b.add_left(nv, b.copy_subtree(t, c));
        }
        if (const auto r = t.vertex(v).right_child) b.add_right(nv, rebuild(*r));
        return nv;
    };
    const ctree::VertexId root = rebuild(t.root());
    return std::move(b).build(root);
}

struct Mutant {
    std::string source;
    int level;
    int extra;
    ctree::CodingTree tree;
};

// Seeded mutants of the fixtures that have dense levels.
inline std::vector<Mutant> dense_mutants(std::size_t count, std::uint64_t seed) {
    std::vector<std::pair<std::string, ctree::CodingTree>> pool;
    for (const auto& e : all_fixtures()) {
        auto t = ctree::compile(e);
        for (ctree::VertexId v = 0; v < t.size(); ++v) {
            if (t.label(v).is_dense()) {
                pool.emplace_back(e, std::move(t));
                break;
            }
        }
    }
    std::mt19937_64 rng(seed);
    std::vector<Mutant> out;
    while (out.size() < count) {
        const auto& [expr, t] = pool[rng() % pool.size()];
        std::vector<int> levels;
        for (int l = 1; l <= t.height(); ++l)
            if (t.label(t.level_vertices(l).front()).is_dense()) levels.push_back(l);
        const int level = levels[rng() % levels.size()];
        const auto first = t.level_vertices(level).front();
        const auto lefts = t.left_children(first);
        const std::string code = t.code(lefts[rng() % lefts.size()]);
        const int extra = 1 + static_cast<int>(rng() % 3);
        out.push_back({expr, level, extra, duplicate_left_children(t, level, code, extra)});
    }
    return out;
}

}  // namespace support
