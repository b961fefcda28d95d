#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ctree/coding_tree.hpp"
#include "ctree/value.hpp"

namespace ctree {

/// A point of the order encoded by a coding tree: one value per branch vertex,
/// root level first, down to level 1. The branch itself is derived from the
/// values (endpoint values route right, colours pick the left child).
struct Point {
    std::vector<Value> values;

    friend bool operator==(const Point&, const Point&) = default;
};

std::string to_string(const Point& p);

/// Value of `p` at `level` (1 <= level <= height).
const Value& value_at(const CodingTree& t, const Point& p, int level);

/// Whether `value` lies in the order named by `label`.
bool in_domain(const Label& label, const Value& value);

/// The child of `v` that `value` routes to, or nullopt if the value is outside
/// the label's domain.
std::optional<VertexId> route(const CodingTree& t, VertexId v, const Value& value);

struct PointIssue {
    int level = 0;
    std::string kind;  // "length", "domain" or "colour"
    std::string message;
};

struct PointReport {
    std::vector<PointIssue> issues;

    bool ok() const noexcept { return issues.empty(); }
    bool has(std::string_view kind) const;
};

PointReport validate_point(const CodingTree& t, const Point& p);

/// Branch vertices of `p` from the root (index 0) to its leaf (index height).
/// Throws InvalidPoint.
std::vector<VertexId> branch(const CodingTree& t, const Point& p);

enum class Ordering { Less, Equal, Greater };
std::string_view to_string(Ordering o);

Ordering compare(const CodingTree& t, const Point& p, const Point& q);

Point default_point(const CodingTree& t);

std::optional<Point> successor(const CodingTree& t, const Point& p);
std::optional<Point> predecessor(const CodingTree& t, const Point& p);

bool fin_equiv(const CodingTree& t, const Point& p, const Point& q);

/// All points r with p <= r <= q in increasing order. Empty when p > q.
/// Throws InfiniteInterval when the interval is infinite.
std::vector<Point> enumerate_interval(const CodingTree& t, const Point& p, const Point& q,
                                      std::size_t max_steps = 10'000);

/// Points agree at every level strictly above `level`.
bool level_equiv(const CodingTree& t, const Point& p, const Point& q, int level);

/// Seeded point generator. All draws are deterministic for a given seed.
class PointSampler {
public:
    PointSampler(const CodingTree& t, std::uint64_t seed, int magnitude);

    /// Unconstrained point: integers in [-M, M] (clamped to <= 0 under w*),
    /// rationals p/q with |p|, q <= M, colours and endpoints chosen uniformly.
    Point any();

    /// A point <= f. Returns f itself now and then.
    Point below(const Point& f);

    /// Keeps `p` at levels above `level` and redraws the rest.
    Point redraw_from(const Point& p, int level);

    /// Integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

    /// Rational in the open interval with colour `colour` out of `n`.
    Rational rational_in(const Rational& lo, const Rational& hi, int colour, int n);

private:
    Value any_value(VertexId v);
    Value value_below(VertexId v, const Value& bound);
    Rational any_rational(int colour, int n);
    Point complete(std::vector<Value> prefix);

    const CodingTree& tree_;
    std::mt19937_64 rng_;
    std::int64_t magnitude_;
};

Point random_point(const CodingTree& t, std::uint64_t seed, int magnitude);

}  // namespace ctree
