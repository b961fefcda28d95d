#pragma once

#include <compare>
#include <cstddef>
#include <string>

namespace ctree {

enum class LabelKind { Singleton, Z, WStar, Q, QDot, Qn, QnDot };

/// Vertex label of a coding tree. `n` is the colour count for Qn/QnDot and
/// unused (zero) otherwise.
struct Label {
    LabelKind kind = LabelKind::Singleton;
    int n = 0;

    static Label singleton() { return {LabelKind::Singleton, 0}; }
    static Label z() { return {LabelKind::Z, 0}; }
    static Label wstar() { return {LabelKind::WStar, 0}; }
    static Label q() { return {LabelKind::Q, 0}; }
    static Label qdot() { return {LabelKind::QDot, 0}; }
    static Label qn(int n);
    static Label qndot(int n);

    /// Number of children the label demands.
    std::size_t arity() const;
    /// Labels whose order has a greatest element, routed to the right child.
    bool has_endpoint() const;
    bool is_discrete() const { return kind == LabelKind::Z || kind == LabelKind::WStar; }
    bool is_dense() const;
    bool is_coloured() const { return kind == LabelKind::Qn || kind == LabelKind::QnDot; }
    /// Colour count used by `col`; 1 for uncoloured labels.
    int colours() const { return is_coloured() ? n : 1; }
    std::size_t left_arity() const { return has_endpoint() ? arity() - 1 : arity(); }

    friend bool operator==(const Label&, const Label&) = default;
    friend auto operator<=>(const Label&, const Label&) = default;
};

/// Surface spelling: "1", "Z", "w*", "Q", "Qd", "Q_n", "Qd_n".
std::string to_string(const Label& label);

/// Identifier of the lower-isomorphism class of a label.
std::string label_class(const Label& label);

bool label_lower_equiv(const Label& a, const Label& b);

}  // namespace ctree
