#include "ctree/order_expr.hpp"

#include <cctype>
#include <limits>

#include "ctree/error.hpp"

namespace ctree {

OrderExpr::OrderExpr(ExprKind kind, std::vector<OrderExpr> children,
                     std::shared_ptr<const OrderExpr> tail)
    : kind_(kind), children_(std::move(children)), tail_(std::move(tail)) {}

OrderExpr OrderExpr::singleton() { return OrderExpr(ExprKind::Singleton, {}, nullptr); }
OrderExpr OrderExpr::z(OrderExpr body) { return OrderExpr(ExprKind::ZProd, {std::move(body)}, nullptr); }
OrderExpr OrderExpr::q(OrderExpr body) { return OrderExpr(ExprKind::QProd, {std::move(body)}, nullptr); }
OrderExpr OrderExpr::wstar(OrderExpr body) {
    return OrderExpr(ExprKind::WStarProd, {std::move(body)}, nullptr);
}
OrderExpr OrderExpr::wstar(OrderExpr body, OrderExpr tail) {
    return OrderExpr(ExprKind::WStarProd, {std::move(body)},
                     std::make_shared<const OrderExpr>(std::move(tail)));
}
OrderExpr OrderExpr::qdot(OrderExpr body) {
    return OrderExpr(ExprKind::QDotProd, {std::move(body)}, nullptr);
}
OrderExpr OrderExpr::qdot(OrderExpr body, OrderExpr tail) {
    return OrderExpr(ExprKind::QDotProd, {std::move(body)},
                     std::make_shared<const OrderExpr>(std::move(tail)));
}
OrderExpr OrderExpr::qn(std::vector<OrderExpr> parts) {
    if (parts.size() < 2) throw Error(ErrorCode::Arity, "Q_n needs at least 2 parts");
    return OrderExpr(ExprKind::QnMix, std::move(parts), nullptr);
}
OrderExpr OrderExpr::qndot(std::vector<OrderExpr> parts) {
    if (parts.size() < 2) throw Error(ErrorCode::Arity, "Qd_n needs at least 2 parts");
    return OrderExpr(ExprKind::QnDotMix, std::move(parts), nullptr);
}
OrderExpr OrderExpr::qndot(std::vector<OrderExpr> parts, OrderExpr tail) {
    if (parts.size() < 2) throw Error(ErrorCode::Arity, "Qd_n needs at least 2 parts");
    return OrderExpr(ExprKind::QnDotMix, std::move(parts),
                     std::make_shared<const OrderExpr>(std::move(tail)));
}

bool OrderExpr::is_product() const noexcept {
    return kind_ == ExprKind::ZProd || kind_ == ExprKind::QProd || kind_ == ExprKind::WStarProd ||
           kind_ == ExprKind::QDotProd;
}

bool OrderExpr::tail_capable() const noexcept {
    return kind_ == ExprKind::WStarProd || kind_ == ExprKind::QDotProd || kind_ == ExprKind::QnDotMix;
}

const OrderExpr& OrderExpr::body() const {
    if (!is_product()) throw std::logic_error("body() on a non-product expression");
    return children_.front();
}

const std::vector<OrderExpr>& OrderExpr::parts() const {
    if (kind_ != ExprKind::QnMix && kind_ != ExprKind::QnDotMix)
        throw std::logic_error("parts() on a non-mixture expression");
    return children_;
}

const OrderExpr& OrderExpr::tail() const {
    if (!tail_) throw std::logic_error("tail() on an expression without a tail");
    return *tail_;
}

OrderExpr OrderExpr::with_tail(OrderExpr tail) const {
    if (!tail_capable()) throw std::logic_error("with_tail() on an expression without a tail slot");
    return OrderExpr(kind_, children_, std::make_shared<const OrderExpr>(std::move(tail)));
}

bool operator==(const OrderExpr& a, const OrderExpr& b) {
    if (a.kind_ != b.kind_ || a.children_ != b.children_) return false;
    if (!a.tail_ || !b.tail_) return !a.tail_ && !b.tail_;
    return *a.tail_ == *b.tail_;
}

// ---------------------------------------------------------------------------
// Parser
//
//   expr := sum
//   sum  := prod ('+' sum)?
//   prod := atom ('^' nat)? ('.' prod)?
//   atom := '1' | 'Z' | 'w*' | 'Q' | 'Qd' | 'Q_' nat '(' list ')' | 'Qd_' nat '(' list ')'
//         | '(' expr ')'
//
// Only Z, w*, Q and Qd take a power or a body.

namespace {

enum class AtomKind { One, Z, WStar, Q, QDot, Mix, Group };

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    OrderExpr parse_all() {
        OrderExpr e = sum();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError(pos_, "'+', '.' or end of input");
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) throw SyntaxError(pos_, std::string("'") + c + "'");
    }

    long nat() {
        skip_ws();
        const std::size_t start = pos_;
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > std::numeric_limits<int>::max()) throw SyntaxError(start, "a natural number that fits");
            ++pos_;
        }
        if (pos_ == start) throw SyntaxError(pos_, "a natural number");
        return value;
    }

    OrderExpr sum() {
        OrderExpr head = prod();
        skip_ws();
        const std::size_t plus = pos_;
        if (!accept('+')) return head;
        OrderExpr tail = sum();
        if (head.kind() == ExprKind::QnMix) return OrderExpr::qndot(head.parts(), std::move(tail));
        if (!head.tail_capable() || head.has_tail())
            throw Error(ErrorCode::SyntaxShape,
                        "at offset " + std::to_string(plus) +
                            ": '+' must follow a w*, Qd or Q_n head without a tail");
        return head.with_tail(std::move(tail));
    }

    static OrderExpr wrap(AtomKind kind, OrderExpr body) {
        switch (kind) {
            case AtomKind::Z: return OrderExpr::z(std::move(body));
            case AtomKind::WStar: return OrderExpr::wstar(std::move(body));
            case AtomKind::Q: return OrderExpr::q(std::move(body));
            case AtomKind::QDot: return OrderExpr::qdot(std::move(body));
            default: break;
        }
        throw std::logic_error("wrap on a non-product atom");
    }

    OrderExpr prod() {
        auto [kind, expr] = atom();
        const bool product = kind == AtomKind::Z || kind == AtomKind::WStar || kind == AtomKind::Q ||
                             kind == AtomKind::QDot;
        long power = 1;
        skip_ws();
        const std::size_t op = pos_;
        if (accept('^')) {
            if (!product)
                throw Error(ErrorCode::SyntaxShape,
                            "at offset " + std::to_string(op) + ": only Z, w*, Q and Qd take a power");
            power = nat();
            if (power < 1) throw SyntaxError(op + 1, "a power of at least 1");
        }
        skip_ws();
        const std::size_t dot = pos_;
        OrderExpr body = OrderExpr::singleton();
        if (accept('.')) {
            if (!product)
                throw Error(ErrorCode::SyntaxShape, "at offset " + std::to_string(dot) +
                                                        ": only Z, w*, Q and Qd take a product body");
            body = prod();
        } else if (!product) {
            return expr;
        }
        for (long i = 0; i < power; ++i) body = wrap(kind, std::move(body));
        return body;
    }

    std::pair<AtomKind, OrderExpr> atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError(pos_, "an atom");
        const char c = text_[pos_];
        if (c == '1') {
            ++pos_;
            return {AtomKind::One, OrderExpr::singleton()};
        }
        if (c == 'Z') {
            ++pos_;
            return {AtomKind::Z, OrderExpr::singleton()};
        }
        if (c == 'w') {
            ++pos_;
            if (pos_ >= text_.size() || text_[pos_] != '*') throw SyntaxError(pos_, "'*' after 'w'");
            ++pos_;
            return {AtomKind::WStar, OrderExpr::singleton()};
        }
        if (c == 'Q') {
            ++pos_;
            bool dotted = false;
            if (pos_ < text_.size() && text_[pos_] == 'd') {
                dotted = true;
                ++pos_;
            }
            if (pos_ < text_.size() && text_[pos_] == '_') {
                ++pos_;
                return {AtomKind::Mix, mixture(dotted)};
            }
            return {dotted ? AtomKind::QDot : AtomKind::Q, OrderExpr::singleton()};
        }
        if (c == '(') {
            ++pos_;
            OrderExpr e = sum();
            expect(')');
            return {AtomKind::Group, std::move(e)};
        }
        throw SyntaxError(pos_, "one of 1, Z, w*, Q, Qd, Q_n, Qd_n or '('");
    }

    OrderExpr mixture(bool dotted) {
        const std::size_t at = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw SyntaxError(pos_, "a finite colour count");
        const long n = nat();
        if (n < 2) throw Error(ErrorCode::Arity, "at offset " + std::to_string(at) + ": Q_n needs n >= 2");
        expect('(');
        std::vector<OrderExpr> parts;
        parts.push_back(sum());
        while (accept(',')) parts.push_back(sum());
        expect(')');
        if (static_cast<long>(parts.size()) != n)
            throw Error(ErrorCode::Arity, "at offset " + std::to_string(at) + ": Q_" + std::to_string(n) +
                                              " given " + std::to_string(parts.size()) + " parts");
        return dotted ? OrderExpr::qndot(std::move(parts)) : OrderExpr::qn(std::move(parts));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

std::string print_sum(const OrderExpr& e);

std::string print_list(const std::vector<OrderExpr>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", ";
        out += print_sum(parts[i]);
    }
    return out;
}

std::string print_prod(const OrderExpr& e);

// Body of a product: a sum needs parentheses.
std::string print_body(const OrderExpr& e) {
    if (e.has_tail()) return "(" + print_sum(e) + ")";
    return print_prod(e);
}

std::string product_head(const char* atom, const OrderExpr& e) {
    if (e.body().kind() == ExprKind::Singleton) return atom;
    return std::string(atom) + "." + print_body(e.body());
}

// Prints an expression ignoring its tail.
std::string print_prod(const OrderExpr& e) {
    switch (e.kind()) {
        case ExprKind::Singleton: return "1";
        case ExprKind::ZProd: {
            int k = 0;
            const OrderExpr* cur = &e;
            while (cur->kind() == ExprKind::ZProd) {
                ++k;
                cur = &cur->body();
            }
            if (cur->kind() == ExprKind::Singleton) return k == 1 ? "Z" : "Z^" + std::to_string(k);
            std::string out;
            for (int i = 0; i < k; ++i) out += "Z.";
            return out + print_body(*cur);
        }
        case ExprKind::QProd: return product_head("Q", e);
        case ExprKind::WStarProd: return product_head("w*", e);
        case ExprKind::QDotProd: return product_head("Qd", e);
        case ExprKind::QnMix: return "Q_" + std::to_string(e.parts().size()) + "(" + print_list(e.parts()) + ")";
        case ExprKind::QnDotMix: {
            const std::string n = std::to_string(e.parts().size());
            // With a tail the head reads as Q_n(...) + B.
            return (e.has_tail() ? "Q_" : "Qd_") + n + "(" + print_list(e.parts()) + ")";
        }
    }
    return "?";
}

std::string print_sum(const OrderExpr& e) {
    if (e.has_tail()) return print_prod(e) + " + " + print_sum(e.tail());
    return print_prod(e);
}

}  // namespace

OrderExpr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const OrderExpr& e) { return print_sum(e); }

OrderExpr elaborate(const OrderExpr& e) {
    switch (e.kind()) {
        case ExprKind::Singleton: return e;
        case ExprKind::ZProd: return OrderExpr::z(elaborate(e.body()));
        case ExprKind::QProd: return OrderExpr::q(elaborate(e.body()));
        case ExprKind::WStarProd:
        case ExprKind::QDotProd: {
            OrderExpr body = elaborate(e.body());
            OrderExpr tail = e.has_tail() ? elaborate(e.tail()) : body;
            return e.kind() == ExprKind::WStarProd ? OrderExpr::wstar(std::move(body), std::move(tail))
                                                   : OrderExpr::qdot(std::move(body), std::move(tail));
        }
        case ExprKind::QnMix:
        case ExprKind::QnDotMix: {
            std::vector<OrderExpr> parts;
            for (const auto& p : e.parts()) parts.push_back(elaborate(p));
            if (e.kind() == ExprKind::QnMix) return OrderExpr::qn(std::move(parts));
            OrderExpr tail = e.has_tail() ? elaborate(e.tail()) : parts.front();
            return OrderExpr::qndot(std::move(parts), std::move(tail));
        }
    }
    return e;
}

int height(const OrderExpr& e) {
    if (e.kind() == ExprKind::Singleton) return 0;
    if (e.is_product()) return 1 + height(e.body());
    return 1 + height(e.parts().front());
}

namespace {

CodingTree combine(Label label, const std::vector<CodingTree>& left, const CodingTree* right) {
    TreeBuilder b;
    const int level = left.front().height() + 1;
    VertexId root = b.add(label, level);
    for (const auto& t : left) b.add_left(root, b.copy_subtree(t, t.root()));
    if (right) b.add_right(root, b.copy_subtree(*right, right->root()));
    return std::move(b).build(root);
}

void check_aligned(const std::vector<const CodingTree*>& trees) {
    for (const auto* t : trees) {
        if (t->height() != trees.front()->height())
            throw Error(ErrorCode::LevelMisalignment,
                        "subtrees of heights " + std::to_string(trees.front()->height()) + " and " +
                            std::to_string(t->height()) + " under one parent");
    }
    const Signature first = signature(*trees.front());
    for (const auto* t : trees) {
        if (signature(*t) != first)
            throw Error(ErrorCode::NotLowerIsomorphic, "subtrees under one parent are not lower isomorphic");
    }
}

CodingTree compile_elaborated(const OrderExpr& e) {
    switch (e.kind()) {
        case ExprKind::Singleton: {
            TreeBuilder b;
            VertexId root = b.add(Label::singleton(), 0);
            return std::move(b).build(root);
        }
        case ExprKind::ZProd:
        case ExprKind::QProd:
            return combine(e.kind() == ExprKind::ZProd ? Label::z() : Label::q(),
                           {compile_elaborated(e.body())}, nullptr);
        case ExprKind::WStarProd:
        case ExprKind::QDotProd: {
            CodingTree body = compile_elaborated(e.body());
            CodingTree tail = compile_elaborated(e.tail());
            check_aligned({&body, &tail});
            return combine(e.kind() == ExprKind::WStarProd ? Label::wstar() : Label::qdot(), {body}, &tail);
        }
        case ExprKind::QnMix:
        case ExprKind::QnDotMix: {
            std::vector<CodingTree> parts;
            for (const auto& p : e.parts()) parts.push_back(compile_elaborated(p));
            std::vector<const CodingTree*> all;
            for (const auto& p : parts) all.push_back(&p);
            std::optional<CodingTree> tail;
            if (e.kind() == ExprKind::QnDotMix) {
                tail = compile_elaborated(e.tail());
                all.push_back(&*tail);
            }
            check_aligned(all);
            for (std::size_t i = 0; i < parts.size(); ++i)
                for (std::size_t j = i + 1; j < parts.size(); ++j)
                    if (parts[i].code(parts[i].root()) == parts[j].code(parts[j].root()))
                        throw Error(ErrorCode::IsomorphicLeftChildren,
                                    "parts " + std::to_string(i) + " and " + std::to_string(j) +
                                        " of the mixture are isomorphic");
            const int n = static_cast<int>(parts.size());
            if (tail) return combine(Label::qndot(n), parts, &*tail);
            return combine(Label::qn(n), parts, nullptr);
        }
    }
    throw std::logic_error("unknown expression kind");
}

}  // namespace

CodingTree compile(const OrderExpr& e) { return compile_elaborated(elaborate(e)); }

}  // namespace ctree
