#include "ctree/value.hpp"

#include <charconv>
#include <numeric>

#include "ctree/error.hpp"

namespace ctree {

namespace {

using Wide = __int128;

Rational to_rational(const Value& v) {
    return v.is_int() ? Rational(v.as_int()) : v.as_rational();
}

// floor(num / den) for den > 0
Wide floor_div(Wide num, Wide den) {
    Wide q = num / den;
    if ((num % den != 0) && (num < 0)) --q;
    return q;
}

Wide ceil_div(Wide num, Wide den) { return -floor_div(-num, den); }

}  // namespace

std::strong_ordering operator<=>(const Value& a, const Value& b) {
    if (a.is_top() || b.is_top()) {
        if (a.is_top() && b.is_top()) return std::strong_ordering::equal;
        return a.is_top() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (a.is_int() && b.is_int()) return a.as_int() <=> b.as_int();
    const Rational x = to_rational(a);
    const Rational y = to_rational(b);
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string to_string(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_string(const Value& v) {
    if (v.is_top()) return "top";
    if (v.is_int()) return std::to_string(v.as_int());
    return to_string(v.as_rational());
}

Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
        std::int64_t x = 0;
        if (!s.empty() && s.front() == '+') s.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw Error(ErrorCode::Decode, "malformed rational '" + std::string(text) + "'");
        return x;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    const std::int64_t num = parse_int(text.substr(0, slash));
    const std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::Decode, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

int col(const Rational& q, int n) {
    if (n <= 1) return 0;
    const std::int64_t m = q.numerator() % n;
    return static_cast<int>(m < 0 ? m + n : m);
}

Rational between(const Rational& a, const Rational& b, int colour, int n) {
    if (!(a < b))
        throw Error(ErrorCode::EmptyInterval, "between(" + to_string(a) + ", " + to_string(b) + ")");
    const Wide an = a.numerator(), ad = a.denominator();
    const Wide bn = b.numerator(), bd = b.denominator();
    for (std::int64_t d = 1;; ++d) {
        // numerators p with a < p/d < b
        const Wide lo = floor_div(an * d, ad) + 1;
        const Wide hi = ceil_div(bn * d, bd) - 1;
        for (Wide p = lo; p <= hi; ++p) {
            const auto pn = static_cast<std::int64_t>(p);
            if (std::gcd(pn, d) != 1) continue;
            Rational x(pn, d);
            if (col(x, n) == colour) return x;
        }
    }
}

}  // namespace ctree
