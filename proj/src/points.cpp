#include "ctree/points.hpp"

#include <algorithm>

#include "ctree/error.hpp"

namespace ctree {

namespace {

std::size_t index_of(const CodingTree& t, int level) {
    return static_cast<std::size_t>(t.height() - level);
}

void require_valid(const CodingTree& t, const Point& p) {
    auto report = validate_point(t, p);
    if (!report.ok()) throw Error(ErrorCode::InvalidPoint, report.issues.front().message);
}

}  // namespace

std::string to_string(const Point& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        if (i) out += ", ";
        out += to_string(p.values[i]);
    }
    return out + ")";
}

const Value& value_at(const CodingTree& t, const Point& p, int level) {
    if (level < 1 || level > t.height())
        throw Error(ErrorCode::LevelOutOfRange, "no value at level " + std::to_string(level));
    return p.values.at(index_of(t, level));
}

bool in_domain(const Label& label, const Value& value) {
    switch (label.kind) {
        case LabelKind::Singleton: return false;
        case LabelKind::Z: return value.is_int();
        case LabelKind::WStar: return value.is_int() && value.as_int() <= 0;
        case LabelKind::Q:
        case LabelKind::Qn: return value.is_rational();
        case LabelKind::QDot:
        case LabelKind::QnDot: return value.is_rational() || value.is_top();
    }
    return false;
}

std::optional<VertexId> route(const CodingTree& t, VertexId v, const Value& value) {
    const Vertex& x = t.vertex(v);
    if (!in_domain(x.label, value)) return std::nullopt;
    switch (x.label.kind) {
        case LabelKind::Z:
        case LabelKind::Q: return x.children.front();
        case LabelKind::WStar: return value.as_int() == 0 ? *x.right_child : x.children.front();
        case LabelKind::QDot: return value.is_top() ? *x.right_child : x.children.front();
        case LabelKind::Qn:
        case LabelKind::QnDot:
            if (value.is_top()) return *x.right_child;
            return x.children.at(static_cast<std::size_t>(col(value.as_rational(), x.label.n)));
        case LabelKind::Singleton: break;
    }
    return std::nullopt;
}

bool PointReport::has(std::string_view kind) const {
    return std::any_of(issues.begin(), issues.end(), [&](const PointIssue& i) { return i.kind == kind; });
}

PointReport validate_point(const CodingTree& t, const Point& p) {
    PointReport report;
    if (p.values.size() != static_cast<std::size_t>(t.height())) {
        report.issues.push_back({t.height(), "length",
                                 "point has " + std::to_string(p.values.size()) + " values, tree height is " +
                                     std::to_string(t.height())});
        return report;
    }
    VertexId v = t.root();
    std::optional<VertexId> parent;
    for (std::size_t k = 0; k < p.values.size(); ++k) {
        const Value& value = p.values[k];
        const int level = t.level(v);
        auto next = route(t, v, value);
        if (next) {
            parent = v;
            v = *next;
            continue;
        }
        // The value does not fit this vertex. If it fits a sibling under a
        // coloured parent, the parent's value chose the wrong colour.
        if (parent && t.label(*parent).is_coloured()) {
            for (VertexId sib : t.left_children(*parent)) {
                if (sib != v && in_domain(t.label(sib), value)) {
                    report.issues.push_back(
                        {level + 1, "colour",
                         "value " + to_string(p.values[k - 1]) + " at level " + std::to_string(level + 1) +
                             " selects a " + to_string(t.label(v)) + " child but the next value " +
                             to_string(value) + " belongs under a " + to_string(t.label(sib)) + " child"});
                    return report;
                }
            }
        }
        report.issues.push_back({level, "domain",
                                 "value " + to_string(value) + " at level " + std::to_string(level) +
                                     " is not in " + to_string(t.label(v))});
        return report;
    }
    return report;
}

std::vector<VertexId> branch(const CodingTree& t, const Point& p) {
    require_valid(t, p);
    std::vector<VertexId> out{t.root()};
    for (const Value& value : p.values) out.push_back(*route(t, out.back(), value));
    return out;
}

std::string_view to_string(Ordering o) {
    switch (o) {
        case Ordering::Less: return "Less";
        case Ordering::Equal: return "Equal";
        case Ordering::Greater: return "Greater";
    }
    return "?";
}

Ordering compare(const CodingTree& t, const Point& p, const Point& q) {
    require_valid(t, p);
    require_valid(t, q);
    // The first differing value sits at the vertex where the branches part:
    // above it the values agree, so the branches agree too.
    for (std::size_t k = 0; k < p.values.size(); ++k) {
        const auto c = p.values[k] <=> q.values[k];
        if (c < 0) return Ordering::Less;
        if (c > 0) return Ordering::Greater;
    }
    return Ordering::Equal;
}

Point default_point(const CodingTree& t) {
    Point p;
    VertexId v = t.root();
    while (!t.is_leaf(v)) {
        const Label& label = t.label(v);
        Value value = std::int64_t{0};
        switch (label.kind) {
            case LabelKind::Z:
            case LabelKind::WStar: value = std::int64_t{0}; break;
            case LabelKind::Q:
            case LabelKind::Qn: value = Rational(0); break;
            case LabelKind::QDot:
            case LabelKind::QnDot: value = Top{}; break;
            case LabelKind::Singleton: break;
        }
        p.values.push_back(value);
        v = *route(t, v, value);
    }
    return p;
}

std::optional<Point> successor(const CodingTree& t, const Point& p) {
    auto b = branch(t, p);
    if (p.values.empty()) return std::nullopt;
    const Label& bottom = t.label(b[b.size() - 2]);
    const std::int64_t v = p.values.back().is_int() ? p.values.back().as_int() : 0;
    if (bottom.kind == LabelKind::Z || (bottom.kind == LabelKind::WStar && v < 0)) {
        Point s = p;
        s.values.back() = v + 1;
        return s;
    }
    return std::nullopt;
}

std::optional<Point> predecessor(const CodingTree& t, const Point& p) {
    auto b = branch(t, p);
    if (p.values.empty()) return std::nullopt;
    const Label& bottom = t.label(b[b.size() - 2]);
    if (!bottom.is_discrete()) return std::nullopt;
    Point s = p;
    s.values.back() = p.values.back().as_int() - 1;
    return s;
}

bool fin_equiv(const CodingTree& t, const Point& p, const Point& q) {
    auto b = branch(t, p);
    require_valid(t, q);
    if (p == q) return true;
    for (std::size_t k = 0; k + 1 < p.values.size(); ++k)
        if (p.values[k] != q.values[k]) return false;
    return t.label(b[b.size() - 2]).is_discrete();
}

std::vector<Point> enumerate_interval(const CodingTree& t, const Point& p, const Point& q,
                                      std::size_t max_steps) {
    const Ordering o = compare(t, p, q);
    if (o == Ordering::Greater) return {};
    if (!fin_equiv(t, p, q))
        throw Error(ErrorCode::InfiniteInterval, "[" + to_string(p) + ", " + to_string(q) + "] is infinite");
    std::vector<Point> out{p};
    while (!(out.back() == q)) {
        if (out.size() > max_steps)
            throw Error(ErrorCode::InfiniteInterval, "interval exceeds " + std::to_string(max_steps) + " points");
        auto s = successor(t, out.back());
        if (!s) throw Error(ErrorCode::InfiniteInterval, "no successor below the right end");
        out.push_back(std::move(*s));
    }
    return out;
}

bool level_equiv(const CodingTree& t, const Point& p, const Point& q, int level) {
    if (level < 0 || level > t.height())
        throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(level) + " outside 0.." +
                                                    std::to_string(t.height()));
    require_valid(t, p);
    require_valid(t, q);
    const std::size_t above = index_of(t, level);
    return std::equal(p.values.begin(), p.values.begin() + static_cast<std::ptrdiff_t>(above),
                      q.values.begin());
}

// ---------------------------------------------------------------------------

PointSampler::PointSampler(const CodingTree& t, std::uint64_t seed, int magnitude)
    : tree_(t), rng_(seed), magnitude_(std::max(1, magnitude)) {}

std::int64_t PointSampler::uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng_() % span);
}

Rational PointSampler::rational_in(const Rational& lo, const Rational& hi, int colour, int n) {
    // Pick one of M+1 equal slices of (lo, hi) and take its first point of the colour.
    const std::int64_t slices = magnitude_ + 1;
    const std::int64_t k = uniform(0, slices - 1);
    const Rational width = (hi - lo) / slices;
    return between(lo + width * k, lo + width * (k + 1), colour, n);
}

Rational PointSampler::any_rational(int colour, int n) {
    const std::int64_t num = uniform(-magnitude_, magnitude_);
    const std::int64_t den = uniform(1, magnitude_);
    for (std::int64_t step = 0; step < 64; ++step) {
        const std::int64_t off = (step % 2 == 0) ? step / 2 : -(step / 2 + 1);
        Rational r(num + off, den);
        if (col(r, n) == colour) return r;
    }
    const Rational r(num, den);
    return between(r - 1, r + 1, colour, n);
}

Value PointSampler::any_value(VertexId v) {
    const Label& label = tree_.label(v);
    switch (label.kind) {
        case LabelKind::Z: return uniform(-magnitude_, magnitude_);
        case LabelKind::WStar: return std::min<std::int64_t>(uniform(-magnitude_, magnitude_), 0);
        case LabelKind::Q: return any_rational(0, 1);
        case LabelKind::QDot:
            if (uniform(0, 1) == 1) return Top{};
            return any_rational(0, 1);
        case LabelKind::Qn: return any_rational(static_cast<int>(uniform(0, label.n - 1)), label.n);
        case LabelKind::QnDot: {
            const auto c = static_cast<int>(uniform(0, label.n));
            if (c == label.n) return Top{};
            return any_rational(c, label.n);
        }
        case LabelKind::Singleton: break;
    }
    throw Error(ErrorCode::InvalidTree, "no values at a singleton vertex");
}

Value PointSampler::value_below(VertexId v, const Value& bound) {
    const Label& label = tree_.label(v);
    if (label.is_discrete()) return bound.as_int() - uniform(1, magnitude_);
    const int n = label.colours();
    const int colour = static_cast<int>(uniform(0, n - 1));
    if (bound.is_top()) return any_rational(colour, n);
    const Rational a = bound.as_rational();
    const std::int64_t num = uniform(1, magnitude_);
    const std::int64_t den = uniform(1, magnitude_);
    for (std::int64_t step = 0; step < 64; ++step) {
        Rational r = a - Rational(num + step, den);
        if (col(r, n) == colour) return r;
    }
    return between(a - Rational(num, den) - 1, a, colour, n);
}

Point PointSampler::complete(std::vector<Value> prefix) {
    Point p{std::move(prefix)};
    VertexId v = tree_.root();
    for (const Value& value : p.values) {
        auto next = route(tree_, v, value);
        if (!next) throw Error(ErrorCode::InvalidPoint, "prefix leaves the tree");
        v = *next;
    }
    while (!tree_.is_leaf(v)) {
        Value value = any_value(v);
        p.values.push_back(value);
        v = *route(tree_, v, value);
    }
    return p;
}

Point PointSampler::any() { return complete({}); }

Point PointSampler::below(const Point& f) {
    const int h = tree_.height();
    if (h == 0) return f;
    const auto r = uniform(0, 4 * h);
    if (r == 0) return f;
    const int level = 1 + static_cast<int>((r - 1) % h);
    const auto b = branch(tree_, f);
    const std::size_t k = index_of(tree_, level);
    std::vector<Value> prefix(f.values.begin(), f.values.begin() + static_cast<std::ptrdiff_t>(k));
    prefix.push_back(value_below(b[k], f.values[k]));
    return complete(std::move(prefix));
}

Point PointSampler::redraw_from(const Point& p, int level) {
    const std::size_t k = index_of(tree_, level);
    return complete({p.values.begin(), p.values.begin() + static_cast<std::ptrdiff_t>(k)});
}

Point random_point(const CodingTree& t, std::uint64_t seed, int magnitude) {
    return PointSampler(t, seed, magnitude).any();
}

}  // namespace ctree
