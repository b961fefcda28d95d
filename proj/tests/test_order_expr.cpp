#include <doctest.h>

#include <random>

#include "ctree/error.hpp"
#include "ctree/order_expr.hpp"
#include "support.hpp"

using namespace ctree;

namespace {

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

OrderExpr random_expr(std::mt19937_64& rng, int depth) {
    const auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    if (depth <= 0) return OrderExpr::singleton();
    const auto sub = [&] { return random_expr(rng, depth - 1 - pick(2)); };
    switch (pick(8)) {
        case 0: return OrderExpr::singleton();
        case 1: return OrderExpr::z(sub());
        case 2: return OrderExpr::q(sub());
        case 3: return pick(2) ? OrderExpr::wstar(sub(), sub()) : OrderExpr::wstar(sub());
        case 4: return pick(2) ? OrderExpr::qdot(sub(), sub()) : OrderExpr::qdot(sub());
        case 5: {
            std::vector<OrderExpr> parts;
            for (int k = 0, n = 2 + pick(2); k < n; ++k) parts.push_back(sub());
            return OrderExpr::qn(std::move(parts));
        }
        default: {
            std::vector<OrderExpr> parts;
            for (int k = 0, n = 2 + pick(2); k < n; ++k) parts.push_back(sub());
            return pick(2) ? OrderExpr::qndot(std::move(parts), sub()) : OrderExpr::qndot(std::move(parts));
        }
    }
}

}  // namespace

TEST_CASE("powers desugar to nested products") {
    const auto e = parse("Z^3");
    const auto expected = OrderExpr::z(OrderExpr::z(OrderExpr::z(OrderExpr::singleton())));
    CHECK(e == expected);
    CHECK(parse("1") == OrderExpr::singleton());
    CHECK(parse("Z") == OrderExpr::z(OrderExpr::singleton()));
    CHECK(parse("Z.Z.1") == parse("Z^2"));
}

TEST_CASE("sums bind the tail to the preceding endpoint form") {
    const auto z2 = OrderExpr::z(OrderExpr::z(OrderExpr::singleton()));
    CHECK(parse("w*.Z^2 + Z^2") == OrderExpr::wstar(z2, z2));
    CHECK(parse("Qd.Z + Z").kind() == ExprKind::QDotProd);

    const auto mixed = parse("Q_2(w*, Z) + Z");
    CHECK(mixed.kind() == ExprKind::QnDotMix);
    CHECK(mixed.has_tail());
    CHECK(parse("Qd_2(w*, Z)").kind() == ExprKind::QnDotMix);
    CHECK_FALSE(parse("Qd_2(w*, Z)").has_tail());

    // right-associative chains
    const auto chain = parse("w*.Z^2 + w*.Z + w*");
    REQUIRE(chain.has_tail());
    CHECK(chain.tail().kind() == ExprKind::WStarProd);
    CHECK(chain.tail().has_tail());
}

TEST_CASE("printing") {
    CHECK(print(OrderExpr::z(OrderExpr::z(OrderExpr::singleton()))) == "Z^2");
    CHECK(print(OrderExpr::singleton()) == "1");
    const auto w = OrderExpr::wstar(OrderExpr::singleton());
    const auto z = OrderExpr::z(OrderExpr::singleton());
    CHECK(print(OrderExpr::qn({w, z})) == "Q_2(w*, Z)");
    for (const auto& s : support::all_fixtures()) CHECK(print(parse(print(parse(s)))) == print(parse(s)));
}

TEST_CASE("syntax errors carry a position") {
    try {
        parse("Z^");
        FAIL("accepted");
    } catch (const SyntaxError& e) {
        CHECK(e.position() == 2);
        CHECK_FALSE(e.expected().empty());
    }
    CHECK(error_of([] { parse(""); }) == ErrorCode::Syntax);
    CHECK(error_of([] { parse("Z +"); }) == ErrorCode::Syntax);
    CHECK(error_of([] { parse("(Z"); }) == ErrorCode::Syntax);
    CHECK(error_of([] { parse("Z Z"); }) == ErrorCode::Syntax);
    CHECK(error_of([] { parse("Q_2(Z)"); }) == ErrorCode::Arity);
    CHECK(error_of([] { parse("Q_1(Z)"); }) == ErrorCode::Arity);
    CHECK(error_of([] { parse("Z + Z"); }) == ErrorCode::SyntaxShape);
}

TEST_CASE("parse inverts print on random trees") {
    std::mt19937_64 rng(20261016);
    for (int k = 0; k < 500; ++k) {
        const auto e = random_expr(rng, 4);
        const auto text = print(e);
        INFO(text);
        CHECK(parse(text) == e);
    }
}

TEST_CASE("elaboration fills tails") {
    const auto z = OrderExpr::z(OrderExpr::singleton());
    const auto w = OrderExpr::wstar(OrderExpr::singleton(), OrderExpr::singleton());
    CHECK(elaborate(OrderExpr::wstar(z)) == OrderExpr::wstar(z, z));
    CHECK(elaborate(OrderExpr::wstar(OrderExpr::singleton())) == w);
    CHECK(elaborate(OrderExpr::wstar(z, w)) == OrderExpr::wstar(z, w));
    CHECK(elaborate(OrderExpr::qndot({w, z})) == OrderExpr::qndot({w, z}, w));
    CHECK_FALSE(elaborate(OrderExpr::qn({w, z})).has_tail());

    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
        const auto e = random_expr(rng, 4);
        CHECK(elaborate(elaborate(e)) == elaborate(e));
    }
}

TEST_CASE("compilation") {
    const auto z3 = compile("Z^3");
    CHECK(z3.size() == 4);
    VertexId v = z3.root();
    for (const auto kind : {LabelKind::Z, LabelKind::Z, LabelKind::Z}) {
        CHECK(z3.label(v).kind == kind);
        v = z3.vertex(v).children.at(0);
    }
    CHECK(z3.label(v).kind == LabelKind::Singleton);

    const auto right = compile("w*.Z^2 + w*.Z + w*");
    CHECK(right.size() == 10);
    CHECK(right.label(right.root()).kind == LabelKind::WStar);
    const auto& root = right.vertex(right.root());
    CHECK(right.label(root.children.front()).kind == LabelKind::Z);
    CHECK(right.label(*root.right_child).kind == LabelKind::WStar);

    for (const auto& s : support::all_fixtures()) {
        INFO(s);
        CHECK(validate(compile(s)).ok());
        CHECK(compile(s).height() == height(parse(s)));
    }

    CHECK(error_of([] { compile("Q_2(Z, Z)"); }) == ErrorCode::IsomorphicLeftChildren);
    CHECK(error_of([] { compile("w*.Z^2 + Z"); }) == ErrorCode::LevelMisalignment);
    CHECK(error_of([] { compile("w*.Z + Q"); }) == ErrorCode::NotLowerIsomorphic);
    CHECK(error_of([] { compile("Q_2(Z, Q)"); }) == ErrorCode::NotLowerIsomorphic);
}
