#include "ctree/suites.hpp"

#include "ctree/error.hpp"
#include "ctree/points.hpp"
#include "ctree/transitivity.hpp"

namespace ctree {

namespace {

constexpr std::size_t kMaxReported = 5;

void record(SuiteResult& r, bool ok, const std::string& what) {
    if (ok) {
        ++r.passed;
        return;
    }
    ++r.failed;
    if (r.failures.size() < kMaxReported) r.failures.push_back(what);
}

Ordering flip(Ordering o) {
    if (o == Ordering::Less) return Ordering::Greater;
    if (o == Ordering::Greater) return Ordering::Less;
    return o;
}

}  // namespace

SuiteResult order_suite(const CodingTree& t, std::uint64_t seed, std::size_t trials) {
    SuiteResult r{"order", 0, 0, {}};
    PointSampler s(t, seed, 3);
    for (std::size_t k = 0; k < trials; ++k) {
        const Point p = s.any(), q = s.any(), u = s.any();
        const Ordering pq = compare(t, p, q);
        record(r, (pq == Ordering::Equal) == (p == q), "trichotomy: " + to_string(p) + " " + to_string(q));
        record(r, compare(t, q, p) == flip(pq), "antisymmetry: " + to_string(p) + " " + to_string(q));
        const Ordering qu = compare(t, q, u);
        if (pq != Ordering::Greater && qu != Ordering::Greater) {
            const Ordering pu = compare(t, p, u);
            const bool strict = pq == Ordering::Less || qu == Ordering::Less;
            record(r, strict ? pu == Ordering::Less : pu == Ordering::Equal,
                   "transitivity: " + to_string(p) + " " + to_string(q) + " " + to_string(u));
        }
    }
    return r;
}

SuiteResult transitivity_suite(const CodingTree& t, std::uint64_t seed, std::size_t anchors,
                               std::size_t probes) {
    SuiteResult r{"transitivity", 0, 0, {}};
    PointSampler anchor_sampler(t, seed, 5);
    for (std::size_t a = 0; a < anchors; ++a) {
        const Point f = anchor_sampler.any();
        const Point g = anchor_sampler.any();
        Witness w = initial_segment_witness(t, f, g);
        PointSampler s(t, seed + 1 + a, 8);
        const std::string ctx = " (f=" + to_string(f) + ", g=" + to_string(g) + ")";
        record(r, w.apply(f) == g, "anchor" + ctx);
        for (std::size_t k = 0; k < probes; ++k) {
            const Point p = s.below(f), q = s.below(f);
            const Point fp = w.apply(p), fq = w.apply(q);
            record(r, compare(t, p, q) == compare(t, fp, fq),
                   "order: " + to_string(p) + " " + to_string(q) + ctx);
            record(r, validate_point(t, fp).ok() && compare(t, fp, g) != Ordering::Greater,
                   "image: " + to_string(fp) + ctx);
            if (!(p == f))
                record(r, gamma_index(t, g, fp) == gamma_index(t, f, p), "gamma: " + to_string(p) + ctx);
            record(r, w.invert(fp) == p, "inverse: " + to_string(p) + ctx);
        }
    }
    return r;
}

SuiteResult invariance_suite(const CodingTree& t, std::uint64_t seed, std::size_t samples) {
    SuiteResult r{"invariance", 0, 0, {}};
    PointSampler anchor_sampler(t, seed, 5);
    const Point f = anchor_sampler.any();
    const Point g = anchor_sampler.any();
    for (int level = 0; level <= t.height(); ++level) {
        const auto report = invariance_check(t, level, f, g, samples, seed + static_cast<std::uint64_t>(level));
        r.passed += report.pairs_checked - report.violations.size();
        for (const auto& [p, q] : report.violations)
            record(r, false, "level " + std::to_string(level) + ": " + to_string(p) + " " + to_string(q));
    }
    PointSampler s(t, seed + 1000, 3);
    for (std::size_t k = 0; k < samples && t.height() > 0; ++k) {
        const Point p = s.any();
        const Point q = s.redraw_from(p, static_cast<int>(s.uniform(1, t.height())));
        for (int i = 0; i < t.height(); ++i) {
            const bool fine = level_equiv(t, p, q, i);
            record(r, !fine || level_equiv(t, p, q, i + 1),
                   "refinement at " + std::to_string(i) + ": " + to_string(p) + " " + to_string(q));
        }
    }
    return r;
}

}  // namespace ctree
