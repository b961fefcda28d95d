#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <regex>

#include "ctree/error.hpp"
#include "ctree/order_expr.hpp"
#include "ctree/serialize.hpp"
#include "support.hpp"

using namespace ctree;

namespace {

std::map<int, std::vector<std::string>> labels_by_level(const CodingTree& t) {
    std::map<int, std::vector<std::string>> out;
    for (VertexId v = 0; v < t.size(); ++v) out[t.level(v)].push_back(to_string(t.label(v)));
    for (auto& [level, labels] : out) std::sort(labels.begin(), labels.end());
    return out;
}

// Random levelled tree (not necessarily a coding tree) with arities matching labels.
VertexId random_subtree(TreeBuilder& b, std::mt19937_64& rng, int level) {
    if (level == 0) return b.add(Label::singleton(), 0);
    static const std::vector<Label> labels = {Label::z(),      Label::wstar(),  Label::q(),
                                              Label::qdot(),   Label::qn(2),    Label::qndot(2)};
    const Label l = labels[rng() % labels.size()];
    const VertexId v = b.add(l, level);
    for (int k = 0; k < l.left_arity(); ++k) b.add_left(v, random_subtree(b, rng, level - 1 - (rng() % 4 == 0 && level > 1)));
    if (l.has_endpoint()) b.add_right(v, random_subtree(b, rng, level - 1));
    return v;
}

// Same tree with left children in a random order.
VertexId shuffled_copy(TreeBuilder& b, const CodingTree& t, VertexId v, std::mt19937_64& rng) {
    const VertexId nv = b.add(t.label(v), t.level(v));
    auto lefts = t.left_children(v);
    std::shuffle(lefts.begin(), lefts.end(), rng);
    for (VertexId c : lefts) b.add_left(nv, shuffled_copy(b, t, c, rng));
    if (const auto r = t.vertex(v).right_child) b.add_right(nv, shuffled_copy(b, t, *r, rng));
    return nv;
}

bool is_isomorphism(const CodingTree& a, const CodingTree& b, const std::vector<VertexId>& m) {
    if (m.size() != a.size() || a.size() != b.size()) return false;
    std::vector<bool> hit(b.size(), false);
    for (VertexId v = 0; v < a.size(); ++v) {
        if (hit.at(m[v])) return false;
        hit[m[v]] = true;
        if (!(a.label(v) == b.label(m[v])) || a.level(v) != b.level(m[v])) return false;
        const auto& x = a.vertex(v);
        const auto& y = b.vertex(m[v]);
        if (x.children.size() != y.children.size()) return false;
        for (VertexId c : x.children)
            if (std::find(y.children.begin(), y.children.end(), m[c]) == y.children.end()) return false;
        if (x.right_child.has_value() != y.right_child.has_value()) return false;
        if (x.right_child && m[*x.right_child] != *y.right_child) return false;
    }
    return m[a.root()] == b.root();
}

template <class F>
ErrorCode error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("the Z^3 class") {
    using L = std::map<int, std::vector<std::string>>;
    const std::vector<std::pair<std::size_t, L>> expected = {
        {4, {{3, {"Z"}}, {2, {"Z"}}, {1, {"Z"}}, {0, {"1"}}}},
        {7, {{3, {"w*"}}, {2, {"Z", "Z"}}, {1, {"Z", "Z"}}, {0, {"1", "1"}}}},
        {9, {{3, {"w*"}}, {2, {"Z", "w*"}}, {1, {"Z", "Z", "Z"}}, {0, {"1", "1", "1"}}}},
        {10, {{3, {"w*"}}, {2, {"Z", "w*"}}, {1, {"Z", "Z", "w*"}}, {0, {"1", "1", "1", "1"}}}},
    };
    std::vector<CodingTree> trees;
    for (std::size_t k = 0; k < support::kZ3Class.size(); ++k) {
        trees.push_back(compile(support::kZ3Class[k]));
        CHECK(trees.back().size() == expected[k].first);
        CHECK(labels_by_level(trees.back()) == expected[k].second);
        CHECK(validate(trees.back()).ok());
    }
    for (std::size_t i = 0; i < trees.size(); ++i) {
        for (std::size_t j = 0; j < trees.size(); ++j) {
            CHECK(lower_isomorphic(trees[i], trees[j]));
            CHECK(tree_iso(trees[i], trees[j]).has_value() == (i == j));
        }
    }
}

TEST_CASE("label lower equivalence") {
    CHECK(label_lower_equiv(Label::z(), Label::wstar()));
    CHECK(label_lower_equiv(Label::z(), Label::z()));
    CHECK(label_lower_equiv(Label::q(), Label::qdot()));
    CHECK(label_lower_equiv(Label::qn(3), Label::qndot(3)));
    CHECK_FALSE(label_lower_equiv(Label::qn(2), Label::qndot(3)));
    CHECK_FALSE(label_lower_equiv(Label::z(), Label::q()));
    CHECK_FALSE(label_lower_equiv(Label::q(), Label::qn(2)));
    CHECK(error_of([] { Label::qn(1); }) == ErrorCode::Arity);
}

TEST_CASE("validation catches each condition") {
    SUBCASE("label class on a level") {
        auto vs = compile("Z^3").vertices();
        for (auto& v : vs)
            if (v.level == 2) v.label = Label::q();
        // one vertex per level: the relabelled path is the valid tree of Z.Q.Z
        const CodingTree relabelled(vs, compile("Z^3").root());
        CHECK(validate(relabelled).ok());
        CHECK(tree_iso(relabelled, compile("Z.Q.Z")));
        auto ws = compile("w*.Z^2 + Z^2").vertices();
        for (auto& v : ws)
            if (v.level == 2 && v.right_child == std::nullopt) {
                v.label = Label::q();
                break;
            }
        CHECK(validate(CodingTree(ws, compile("w*.Z^2 + Z^2").root())).has("V4"));
    }
    SUBCASE("arity") {
        TreeBuilder b;
        const auto root = b.add(Label::wstar(), 1);
        b.add_left(root, b.add(Label::singleton(), 0));
        b.add_left(root, b.add(Label::singleton(), 0));
        b.add_right(root, b.add(Label::singleton(), 0));
        CHECK(validate(std::move(b).build(root)).has("V3"));
    }
    SUBCASE("levels") {
        TreeBuilder b;
        const auto root = b.add(Label::z(), 2);
        b.add_left(root, b.add(Label::singleton(), 0));
        CHECK(validate(std::move(b).build(root)).has("V2"));
    }
    SUBCASE("left forests across a level") {
        TreeBuilder b;
        const auto root = b.add(Label::wstar(), 3);
        const auto z2 = b.add(Label::z(), 2);
        const auto z1 = b.add(Label::z(), 1);
        b.add_left(z1, b.add(Label::singleton(), 0));
        b.add_left(z2, z1);
        const auto w2 = b.add(Label::wstar(), 2);
        const auto w1 = b.add(Label::wstar(), 1);
        b.add_left(w1, b.add(Label::singleton(), 0));
        b.add_right(w1, b.add(Label::singleton(), 0));
        const auto z1b = b.add(Label::z(), 1);
        b.add_left(z1b, b.add(Label::singleton(), 0));
        b.add_left(w2, w1);
        b.add_right(w2, z1b);
        b.add_left(root, z2);
        b.add_right(root, w2);
        const auto report = validate(std::move(b).build(root));
        CHECK(report.has("V5"));
        CHECK_FALSE(report.has("V4"));
    }
    SUBCASE("isomorphic left siblings") {
        TreeBuilder b;
        const auto root = b.add(Label::qn(3), 1);
        for (int k = 0; k < 3; ++k) b.add_left(root, b.add(Label::singleton(), 0));
        const auto t = std::move(b).build(root);
        CHECK(validate(t).has("V6"));
        const auto c = canonicalize(t);
        CHECK(c.size() == 2);
        CHECK(c.label(c.root()) == Label::q());
        CHECK(validate(c).ok());
    }
}

TEST_CASE("iso codes and tree isomorphism") {
    const auto z2 = compile("Z^2");
    const auto wz = compile("w*.Z + Z");
    CHECK(iso_code(z2, z2.root()) != iso_code(wz, wz.root()));
    const auto leaf_a = z2.level_vertices(0).front();
    const auto leaf_b = wz.level_vertices(0).front();
    CHECK(iso_code(z2, leaf_a) == iso_code(wz, leaf_b));

    const auto two = compile("w*.Z^2 + Z^2");
    const auto& kids = two.vertex(two.root()).children;
    REQUIRE(kids.size() == 2);
    CHECK(two.code(kids[0]) == two.code(kids[1]));

    const auto z3 = compile("Z^3");
    const auto id = tree_iso(z3, z3);
    REQUIRE(id);
    for (VertexId v = 0; v < z3.size(); ++v) CHECK((*id)[v] == v);
    CHECK_FALSE(tree_iso(z3, two));
    CHECK_FALSE(tree_iso(two, z3));
}

TEST_CASE("tree isomorphism agrees with a brute-force matcher") {
    std::mt19937_64 rng(99);
    int positives = 0, negatives = 0;
    for (int k = 0; k < 400; ++k) {
        TreeBuilder ba, bb;
        const int h = 1 + static_cast<int>(rng() % 3);
        const auto ra = random_subtree(ba, rng, h);
        const auto a = std::move(ba).build(ra);
        if (a.size() > 12) continue;
        CodingTree b = a;
        if (rng() % 2) {
            const auto rb = shuffled_copy(bb, a, a.root(), rng);
            b = std::move(bb).build(rb);
        } else {
            const auto rb = random_subtree(bb, rng, h);
            b = std::move(bb).build(rb);
        }
        const auto m = tree_iso(a, b);
        const bool brute = support::brute_iso(a, b);
        CHECK(m.has_value() == brute);
        CHECK(tree_iso(b, a).has_value() == brute);
        if (m) CHECK(is_isomorphism(a, b, *m));
        (brute ? positives : negatives)++;
    }
    CHECK(positives > 50);
    CHECK(negatives > 50);
}

TEST_CASE("left forests and signatures") {
    const auto wz = compile("w*.Z + Z");
    const auto f = left_forest(wz, wz.root());
    REQUIRE(f.roots.size() == 1);
    CHECK(wz.label(f.roots[0]) == Label::z());

    const auto q2 = compile("Q_2(w*, Z)");
    const auto g = left_forest(q2, q2.root());
    REQUIRE(g.roots.size() == 2);
    CHECK(q2.code(g.roots[0]) != q2.code(g.roots[1]));

    const auto qd = compile("Qd.Z + Z");
    const auto h = left_forest(qd, qd.root());
    CHECK(h.roots.size() == 1);
    CHECK(std::find(h.roots.begin(), h.roots.end(), *qd.vertex(qd.root()).right_child) == h.roots.end());
    CHECK(error_of([&] { left_forest(qd, qd.level_vertices(0).front()); }) == ErrorCode::NotAParent);

    CHECK(signature(compile("Z^3")) == signature(compile("w*.Z^2 + Z^2")));
    CHECK(signature(compile("Z^2")) != signature(compile("Z^3")));
    CHECK(signature(compile("Q.Z")) != signature(compile("Z^2")));

    for (const auto& group : {support::kZ3Class, support::kZ2Class, support::kQ2Class})
        for (const auto& a : group)
            for (const auto& b : group) CHECK(lower_isomorphic(compile(a), compile(b)));
    CHECK_FALSE(lower_isomorphic(compile("Z^2"), compile("Q_2(w*, Z)")));
    CHECK_FALSE(lower_isomorphic(compile("Z^3"), compile("Z^2")));
}

TEST_CASE("canonicalization") {
    for (const auto& e : support::all_fixtures()) {
        const auto t = compile(e);
        CHECK(canonicalize(t) == t);
    }
    for (const auto& m : support::dense_mutants(60, 5)) {
        INFO(m.source << " level " << m.level << " +" << m.extra);
        const auto report = validate(m.tree);
        CHECK(report.has("V6"));
        CHECK(std::all_of(report.violations.begin(), report.violations.end(),
                          [](const Violation& v) { return v.invariant == "V6"; }));
        const auto c = canonicalize(m.tree);
        CHECK(validate(c).ok());
        CHECK(canonicalize(c) == c);
        const auto original = compile(m.source);
        CHECK(signature(c) == signature(original));
        CHECK(support::brute_iso(c, original));
    }
}

TEST_CASE("truncation") {
    const auto z3 = compile("Z^3");
    CHECK(tree_iso(truncate(z3, 1), compile("Z^2")));
    CHECK(truncate(z3, 0) == z3);
    CHECK(tree_iso(truncate(compile("w*.Z^2 + Z^2"), 1), compile("w*.Z + Z")));
    CHECK(tree_iso(truncate(compile("w*.Z^2 + Z^2"), 2), compile("w*")));
    CHECK(tree_iso(truncate(compile("w*.Z^2 + Z^2"), 3), compile("1")));
    CHECK(tree_iso(truncate(compile("Q_2(w*, Z) + Z"), 1), compile("Qd.1 + 1")));
    for (const auto& e : support::all_fixtures()) {
        const auto t = compile(e);
        for (int i = 0; i <= t.height(); ++i) {
            INFO(e << " at " << i);
            const auto cut = truncate(t, i);
            CHECK(validate(cut).ok());
            CHECK(cut.height() == t.height() - i);
        }
        CHECK(error_of([&] { truncate(t, t.height() + 1); }) == ErrorCode::LevelOutOfRange);
    }
}

TEST_CASE("json and dot") {
    for (const auto& e : support::all_fixtures()) {
        const auto t = compile(e);
        CHECK(tree_from_json_text(to_json_text(t)) == t);
    }
    const auto dot = to_dot(compile("Z^3"));
    const std::regex node(R"(n\d+ \[label=)");
    CHECK(std::distance(std::sregex_iterator(dot.begin(), dot.end(), node), std::sregex_iterator()) == 4);

    const char* two_parents = R"({"root": 0, "vertices": [
        {"id": 0, "label": "w*", "level": 1, "children": [1, 2], "right_child": 2},
        {"id": 1, "label": "1", "level": 0, "children": [], "right_child": null},
        {"id": 2, "label": "Z", "level": 1, "children": [1], "right_child": null}]})";
    CHECK(error_of([&] { tree_from_json_text(two_parents); }) == ErrorCode::Decode);
    CHECK(error_of([] { tree_from_json_text("{"); }) == ErrorCode::Decode);
    CHECK(error_of([] { tree_from_json_text(R"({"root": 0, "vertices": []})"); }) == ErrorCode::Decode);
    const char* bad_label = R"({"root": 0, "vertices": [
        {"id": 0, "label": "R", "level": 0, "children": [], "right_child": null}]})";
    CHECK(error_of([&] { tree_from_json_text(bad_label); }) == ErrorCode::Decode);

    // ids need not be dense
    const char* sparse = R"({"root": 10, "vertices": [
        {"id": 10, "label": "Z", "level": 1, "children": [7], "right_child": null},
        {"id": 7, "label": "1", "level": 0, "children": [], "right_child": null}]})";
    CHECK(tree_iso(tree_from_json_text(sparse), compile("Z")));
}
