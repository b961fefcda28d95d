#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <boost/rational.hpp>

namespace ctree {

using Rational = boost::rational<std::int64_t>;

/// Greatest element of the dotted dense orders (Qd, Qd_n).
struct Top {
    friend bool operator==(Top, Top) { return true; }
};

/// One coordinate of a point: an integer (Z, w*), an exact rational
/// (Q, Qd, Q_n, Qd_n) or Top (Qd, Qd_n endpoint).
class Value {
public:
    Value(std::int64_t i) : v_(i) {}                   // NOLINT(google-explicit-constructor)
    Value(int i) : v_(static_cast<std::int64_t>(i)) {}  // NOLINT(google-explicit-constructor)
    Value(Rational r) : v_(r) {}                       // NOLINT(google-explicit-constructor)
    Value(Top t) : v_(t) {}                            // NOLINT(google-explicit-constructor)

    bool is_int() const noexcept { return std::holds_alternative<std::int64_t>(v_); }
    bool is_rational() const noexcept { return std::holds_alternative<Rational>(v_); }
    bool is_top() const noexcept { return std::holds_alternative<Top>(v_); }

    std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
    Rational as_rational() const { return std::get<Rational>(v_); }

    /// Integers and rationals compare numerically; Top is above both.
    friend std::strong_ordering operator<=>(const Value& a, const Value& b);
    friend bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }

private:
    std::variant<std::int64_t, Rational, Top> v_;
};

/// "k" for integers, "p/q" for rationals, "top" for Top.
std::string to_string(const Value& v);
std::string to_string(const Rational& r);
/// Accepts "p/q" or "p"; the result is in lowest terms.
Rational parse_rational(std::string_view text);

/// Colour of q in the n-coloured rationals: the numerator of q in lowest terms,
/// reduced mod n into 0..n-1. With n = 1 every rational has colour 0.
int col(const Rational& q, int n);

/// The first x with a < x < b and col(x, n) = colour, scanning denominators
/// 1, 2, 3, ... and, for each, numerators upward. Throws EmptyInterval if a >= b.
Rational between(const Rational& a, const Rational& b, int colour, int n);

}  // namespace ctree
