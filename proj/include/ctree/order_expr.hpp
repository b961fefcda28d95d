#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ctree/coding_tree.hpp"

namespace ctree {

enum class ExprKind { Singleton, ZProd, QProd, WStarProd, QDotProd, QnMix, QnDotMix };

/// Abstract syntax of a linear-order expression.
///
/// Products carry a body (`A` in `Z.A`); the endpoint forms `w*.A + B`,
/// `Qd.A + B` and `Q_n(...) + B` may carry a tail `B`. Mixtures carry their
/// parts in colour order.
class OrderExpr {
public:
    static OrderExpr singleton();
    static OrderExpr z(OrderExpr body);
    static OrderExpr q(OrderExpr body);
    static OrderExpr wstar(OrderExpr body);
    static OrderExpr wstar(OrderExpr body, OrderExpr tail);
    static OrderExpr qdot(OrderExpr body);
    static OrderExpr qdot(OrderExpr body, OrderExpr tail);
    static OrderExpr qn(std::vector<OrderExpr> parts);
    static OrderExpr qndot(std::vector<OrderExpr> parts);
    static OrderExpr qndot(std::vector<OrderExpr> parts, OrderExpr tail);

    ExprKind kind() const noexcept { return kind_; }
    bool is_product() const noexcept;
    bool tail_capable() const noexcept;

    /// Body of a product (Z/Q/w*/Qd).
    const OrderExpr& body() const;
    /// Parts of a mixture (Q_n/Qd_n).
    const std::vector<OrderExpr>& parts() const;
    bool has_tail() const noexcept { return tail_ != nullptr; }
    const OrderExpr& tail() const;

    /// Copy with the tail slot replaced.
    OrderExpr with_tail(OrderExpr tail) const;

    friend bool operator==(const OrderExpr& a, const OrderExpr& b);

private:
    OrderExpr(ExprKind kind, std::vector<OrderExpr> children, std::shared_ptr<const OrderExpr> tail);

    ExprKind kind_;
    std::vector<OrderExpr> children_;  // the body for products, the parts for mixtures
    std::shared_ptr<const OrderExpr> tail_;
};

OrderExpr parse(std::string_view text);
std::string print(const OrderExpr& e);

/// Fills every empty tail: w*.A and Qd.A take A, Qd_n(A, ...) takes A.
/// Plain Q_n stays tail-less.
OrderExpr elaborate(const OrderExpr& e);

/// Height of the tree `compile` would produce.
int height(const OrderExpr& e);

CodingTree compile(const OrderExpr& e);
inline CodingTree compile(std::string_view text) { return compile(parse(text)); }

}  // namespace ctree
