#include "ctree/transitivity.hpp"

#include <functional>

#include "ctree/error.hpp"
#include "ctree/serialize.hpp"

namespace ctree {

namespace {

void match_subtrees(const CodingTree& t1, VertexId a, const CodingTree& t2, VertexId b,
                    std::map<VertexId, VertexId>& out) {
    out[a] = b;
    const Vertex& x = t1.vertex(a);
    const Vertex& y = t2.vertex(b);
    if (x.right_child) match_subtrees(t1, *x.right_child, t2, *y.right_child, out);
    const auto targets = t2.left_children(b);
    std::vector<bool> used(targets.size(), false);
    for (VertexId c : t1.left_children(a)) {
        for (std::size_t k = 0; k < targets.size(); ++k) {
            if (!used[k] && t2.code(targets[k]) == t1.code(c)) {
                used[k] = true;
                match_subtrees(t1, c, t2, targets[k], out);
                break;
            }
        }
    }
}

std::vector<int> invert_permutation(const std::vector<int>& p) {
    std::vector<int> inv(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) inv.at(static_cast<std::size_t>(p[i])) = static_cast<int>(i);
    return inv;
}

bool is_identity(const std::vector<int>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i)) return false;
    return true;
}

}  // namespace

ForestIso forest_iso_map(const CodingTree& t, VertexId v1, VertexId v2) {
    return forest_iso_map(t, v1, t, v2);
}

ForestIso forest_iso_map(const CodingTree& t1, VertexId v1, const CodingTree& t2, VertexId v2) {
    const Forest a = left_forest(t1, v1);
    const Forest b = left_forest(t2, v2);
    if (a.code != b.code)
        throw Error(ErrorCode::NotIsomorphic, "left forests of vertices " + std::to_string(v1) + " and " +
                                                  std::to_string(v2) + " differ");
    ForestIso iso;
    iso.source = v1;
    iso.target = v2;
    std::vector<bool> used(b.roots.size(), false);
    for (VertexId c : a.roots) {
        for (std::size_t k = 0; k < b.roots.size(); ++k) {
            if (!used[k] && t2.code(b.roots[k]) == t1.code(c)) {
                used[k] = true;
                match_subtrees(t1, c, t2, b.roots[k], iso.forward);
                break;
            }
        }
    }
    for (const auto& [x, y] : iso.forward) iso.backward[y] = x;
    return iso;
}

std::vector<int> colour_map(const CodingTree& t1, VertexId x, const CodingTree& t2, VertexId y,
                            const std::map<VertexId, VertexId>& iso) {
    if (!t1.label(x).is_coloured()) return {};
    const auto from = t1.left_children(x);
    const auto to = t2.left_children(y);
    std::vector<int> out;
    for (VertexId c : from) {
        const VertexId image = iso.at(c);
        const auto it = std::find(to.begin(), to.end(), image);
        if (it == to.end()) throw Error(ErrorCode::NotIsomorphic, "colour class has no image");
        out.push_back(static_cast<int>(it - to.begin()));
    }
    return out;
}

// ---------------------------------------------------------------------------

SegmentIso::SegmentIso(Label source, Label target, std::vector<int> colours)
    : source_(source), target_(target), colours_(std::move(colours)) {
    if (!label_lower_equiv(source_, target_))
        throw Error(ErrorCode::LabelMismatch, to_string(source_) + " and " + to_string(target_) +
                                                  " are not lower-equivalent");
    if (source_.kind == LabelKind::Singleton)
        throw Error(ErrorCode::LabelMismatch, "singleton vertices carry no values");
    if (source_.is_coloured()) {
        if (colours_.empty()) {
            for (int i = 0; i < source_.n; ++i) colours_.push_back(i);
        }
        if (colours_.size() != static_cast<std::size_t>(source_.n))
            throw Error(ErrorCode::LabelMismatch, "colour map has the wrong size");
        inverse_colours_ = invert_permutation(colours_);
    }
}

SegmentIso::SegmentIso(Label source, Value a, Label target, Value b, std::vector<int> colours)
    : SegmentIso(source, target, std::move(colours)) {
    if (!in_domain(source_, a) || !in_domain(target_, b))
        throw Error(ErrorCode::LabelMismatch, "segment bounds outside their label orders");
    anchor_source_ = a;
    anchor_target_ = b;
    if (source_.is_discrete()) {
        shift_ = b.as_int() - a.as_int();
    } else {
        forward_.emplace(a, b);
        backward_.emplace(b, a);
    }
}

SegmentIso SegmentIso::whole(Label label, std::vector<int> colours) {
    SegmentIso iso(label, label, std::move(colours));
    if (label.has_endpoint() && label.is_dense()) {
        iso.forward_.emplace(Top{}, Top{});
        iso.backward_.emplace(Top{}, Top{});
    }
    return iso;
}

Value SegmentIso::extend(std::map<Value, Value>& from, std::map<Value, Value>& to, const Value& v,
                         const Label& target, const std::vector<int>& colours) {
    if (auto it = from.find(v); it != from.end()) return it->second;
    const Rational x = v.as_rational();
    const int n = target.colours();
    const int colour = colours.empty() ? 0 : colours.at(static_cast<std::size_t>(col(x, n)));

    // Images of the recorded neighbours bound the new image. Top as an upper
    // image imposes no bound on rationals.
    std::optional<Rational> lo, hi;
    auto above = from.upper_bound(v);
    if (above != from.end() && !above->second.is_top()) hi = above->second.as_rational();
    if (above != from.begin()) {
        auto below = std::prev(above);
        lo = below->second.as_rational();
    }

    Rational image;
    const bool fits = (!lo || *lo < x) && (!hi || x < *hi);
    if (fits && col(x, n) == colour) {
        image = x;
    } else if (lo && hi) {
        image = between(*lo, *hi, colour, n);
    } else if (hi) {
        image = between(*hi - 1, *hi, colour, n);
    } else if (lo) {
        image = between(*lo, *lo + 1, colour, n);
    } else {
        image = between(x - 1, x + 1, colour, n);
    }
    from.emplace(v, image);
    to.emplace(image, v);
    return image;
}

Value SegmentIso::forward(const Value& v) {
    if (!in_domain(source_, v) || (anchor_source_ && *anchor_source_ < v))
        throw Error(ErrorCode::InvalidPoint, "value " + to_string(v) + " outside the source segment");
    if (anchor_source_ && v == *anchor_source_) return *anchor_target_;
    if (source_.is_discrete()) return v.as_int() + shift_;
    return extend(forward_, backward_, v, target_, colours_);
}

Value SegmentIso::backward(const Value& w) {
    if (!in_domain(target_, w) || (anchor_target_ && *anchor_target_ < w))
        throw Error(ErrorCode::InvalidPoint, "value " + to_string(w) + " outside the target segment");
    if (anchor_target_ && w == *anchor_target_) return *anchor_source_;
    if (source_.is_discrete()) return w.as_int() - shift_;
    return extend(backward_, forward_, w, source_, inverse_colours_);
}

std::vector<std::pair<Value, Value>> SegmentIso::pairs() const { return {forward_.begin(), forward_.end()}; }

// ---------------------------------------------------------------------------

int gamma_index(const CodingTree& t, const Point& f, const Point& p) {
    if (compare(t, p, f) != Ordering::Less)
        throw Error(ErrorCode::NotStrictlyBelow, to_string(p) + " is not below " + to_string(f));
    for (std::size_t k = 0; k < p.values.size(); ++k)
        if (p.values[k] != f.values[k]) return t.height() - static_cast<int>(k);
    throw std::logic_error("unreachable: distinct points agree everywhere");
}

Witness::Witness(CodingTree source, Point f, CodingTree target, Point g)
    : source_(std::move(source)), target_(std::move(target)), f_(std::move(f)), g_(std::move(g)) {
    if (source_.height() != target_.height())
        throw Error(ErrorCode::SignatureMismatch, "trees have different heights");
    f_branch_ = branch(source_, f_);
    g_branch_ = branch(target_, g_);
}

Witness::LevelMap& Witness::level_map(int level) {
    if (auto it = levels_.find(level); it != levels_.end()) return it->second;
    const auto k = static_cast<std::size_t>(source_.height() - level);
    const VertexId x = f_branch_[k];
    const VertexId y = g_branch_[k];
    ForestIso psi = forest_iso_map(source_, x, target_, y);
    auto colours = colour_map(source_, x, target_, y, psi.forward);
    SegmentIso phi(source_.label(x), f_.values[k], target_.label(y), g_.values[k], std::move(colours));
    return levels_.emplace(level, LevelMap{x, y, std::move(psi), std::move(phi)}).first->second;
}

SegmentIso* Witness::transport(VertexId x, VertexId y) {
    auto it = transports_.find({x, y});
    if (it == transports_.end()) {
        std::optional<SegmentIso> iso;
        const Label& label = source_.label(x);
        if (label.is_coloured()) {
            std::map<VertexId, VertexId> local;
            match_subtrees(source_, x, target_, y, local);
            auto colours = colour_map(source_, x, target_, y, local);
            if (!is_identity(colours)) iso = SegmentIso::whole(label, std::move(colours));
        }
        it = transports_.emplace(std::make_pair(x, y), std::move(iso)).first;
    }
    return it->second ? &*it->second : nullptr;
}

Point Witness::map_gamma(int level, const Point& p, std::vector<SegmentPair>* pairs) {
    LevelMap& lm = level_map(level);
    const auto k = static_cast<std::size_t>(source_.height() - level);
    Point out;
    out.values.assign(g_.values.begin(), g_.values.begin() + static_cast<std::ptrdiff_t>(k));
    const Value at = lm.phi.forward(p.values[k]);
    if (pairs) pairs->push_back({level, p.values[k], at});
    out.values.push_back(at);

    VertexId x = *route(source_, f_branch_[k], p.values[k]);
    for (std::size_t j = k + 1; j < p.values.size(); ++j) {
        const VertexId y = lm.psi(x);
        Value v = p.values[j];
        if (SegmentIso* iso = transport(x, y)) {
            v = iso->forward(v);
            if (pairs) pairs->push_back({source_.height() - static_cast<int>(j), p.values[j], v});
        }
        out.values.push_back(v);
        x = *route(source_, x, p.values[j]);
    }
    return out;
}

Point Witness::apply(const Point& p) {
    const Ordering o = compare(source_, p, f_);
    if (o == Ordering::Greater)
        throw Error(ErrorCode::InvalidPoint, to_string(p) + " lies above the anchor " + to_string(f_));
    Point image;
    std::optional<int> level;
    std::vector<SegmentPair> pairs;
    if (o == Ordering::Equal) {
        image = g_;
    } else {
        level = gamma_index(source_, f_, p);
        image = map_gamma(*level, p, tracing_ ? &pairs : nullptr);
    }
    if (tracing_) trace_.push_back({p, image, level, std::move(pairs)});
    return image;
}

Point Witness::phi(int level, const Point& p) {
    if (compare(source_, p, f_) != Ordering::Less || gamma_index(source_, f_, p) != level)
        throw Error(ErrorCode::NotInGamma, to_string(p) + " is not in Gamma at level " + std::to_string(level));
    return map_gamma(level, p, nullptr);
}

Point Witness::invert(const Point& q) {
    const Ordering o = compare(target_, q, g_);
    if (o == Ordering::Greater)
        throw Error(ErrorCode::InvalidPoint, to_string(q) + " lies above the anchor " + to_string(g_));
    if (o == Ordering::Equal) return f_;
    const int level = gamma_index(target_, g_, q);
    LevelMap& lm = level_map(level);
    const auto k = static_cast<std::size_t>(target_.height() - level);
    Point out;
    out.values.assign(f_.values.begin(), f_.values.begin() + static_cast<std::ptrdiff_t>(k));
    out.values.push_back(lm.phi.backward(q.values[k]));

    VertexId y = *route(target_, g_branch_[k], q.values[k]);
    for (std::size_t j = k + 1; j < q.values.size(); ++j) {
        const VertexId x = lm.psi.inverse(y);
        Value w = q.values[j];
        if (SegmentIso* iso = transport(x, y)) w = iso->backward(w);
        out.values.push_back(w);
        y = *route(target_, y, q.values[j]);
    }
    return out;
}

nlohmann::json Witness::trace_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : trace_) {
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& sp : e.pairs)
            pairs.push_back({{"level", sp.level}, {"from", to_json(sp.from)}, {"to", to_json(sp.to)}});
        out.push_back({{"p", to_json(e.point)},
                       {"image", to_json(e.image)},
                       {"level", e.level ? nlohmann::json(*e.level) : nlohmann::json(nullptr)},
                       {"segment_pairs", pairs}});
    }
    return out;
}

Witness initial_segment_witness(const CodingTree& t, const Point& f, const Point& g) {
    return Witness(t, f, t, g);
}

Witness cross_tree_witness(const CodingTree& t1, const Point& f, const CodingTree& t2, const Point& g) {
    if (signature(t1) != signature(t2))
        throw Error(ErrorCode::SignatureMismatch, "trees are not signature-equal");
    return Witness(t1, f, t2, g);
}

Point phi_i(const CodingTree& t, const Point& f, const Point& g, int level, const Point& p) {
    Witness w(t, f, t, g);
    return w.phi(level, p);
}

ExpandedVertex expanded_vertex(const CodingTree& t, const Point& p, int level) {
    if (level < 0 || level > t.height())
        throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(level) + " outside 0.." +
                                                    std::to_string(t.height()));
    const auto b = branch(t, p);
    const auto k = static_cast<std::size_t>(t.height() - level);
    return {b[k], {p.values.begin(), p.values.begin() + static_cast<std::ptrdiff_t>(k)}};
}

InvarianceReport invariance_check(const CodingTree& t, int level, const Point& f, const Point& g,
                                  std::size_t samples, std::uint64_t seed, int magnitude) {
    if (level < 0 || level > t.height())
        throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(level) + " outside 0.." +
                                                    std::to_string(t.height()));
    Witness phi = initial_segment_witness(t, f, g);
    PointSampler sampler(t, seed, magnitude);
    InvarianceReport report;
    report.level = level;
    for (std::size_t s = 0; s < samples; ++s) {
        const Point p = sampler.below(f);
        Point q = sampler.below(f);
        // Half the pairs share p's values from its Gamma level up, so that
        // equivalent pairs are exercised at every level.
        if (!(p == f) && sampler.uniform(0, 1) == 1) {
            const int gi = gamma_index(t, f, p);
            if (gi > 1) q = sampler.redraw_from(p, static_cast<int>(sampler.uniform(1, gi - 1)));
        }
        const bool before = level_equiv(t, p, q, level);
        const bool after = level_equiv(t, phi.apply(p), phi.apply(q), level);
        ++report.pairs_checked;
        if (before != after) report.violations.emplace_back(p, q);
    }
    return report;
}

}  // namespace ctree
