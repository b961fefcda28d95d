#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ctree/coding_tree.hpp"
#include "ctree/points.hpp"

namespace ctree {

/// Label- and level-preserving bijection between the left forests of two
/// same-level vertices, possibly in different trees. Left children go to left
/// children and right children to right children throughout.
struct ForestIso {
    VertexId source = 0;
    VertexId target = 0;
    std::map<VertexId, VertexId> forward;
    std::map<VertexId, VertexId> backward;

    VertexId operator()(VertexId v) const { return forward.at(v); }
    VertexId inverse(VertexId w) const { return backward.at(w); }
};

/// Throws NotIsomorphic when the left forests differ.
ForestIso forest_iso_map(const CodingTree& t, VertexId v1, VertexId v2);
ForestIso forest_iso_map(const CodingTree& t1, VertexId v1, const CodingTree& t2, VertexId v2);

/// For coloured vertices x -> y under an isomorphism `iso` of their subtrees:
/// colour m of x goes to the colour of iso(child m of x) under y. Empty for
/// uncoloured labels.
std::vector<int> colour_map(const CodingTree& t1, VertexId x, const CodingTree& t2, VertexId y,
                            const std::map<VertexId, VertexId>& iso);

/// Order isomorphism between value initial segments (-inf, a] and (-inf, b]
/// of two lower-equivalent labels, with a -> b.
///
/// Discrete labels use the shift v -> v - a + b. Dense labels are resolved
/// lazily by back-and-forth: each new query is placed between the images of
/// its recorded neighbours, with the colour the colour map prescribes. Every
/// answer is memoized, so repeated and inverse queries are consistent.
class SegmentIso {
public:
    SegmentIso(Label source, Value a, Label target, Value b, std::vector<int> colours = {});

    /// Unanchored automorphism of a whole label order that permutes colours.
    /// Top, if present, is fixed.
    static SegmentIso whole(Label label, std::vector<int> colours);

    const Label& source() const noexcept { return source_; }
    const Label& target() const noexcept { return target_; }

    Value forward(const Value& v);
    Value backward(const Value& w);

    /// Recorded pairs of a dense map, in source order (empty for shifts).
    std::vector<std::pair<Value, Value>> pairs() const;

private:
    SegmentIso(Label source, Label target, std::vector<int> colours);

    Value extend(std::map<Value, Value>& from, std::map<Value, Value>& to, const Value& v,
                 const Label& target, const std::vector<int>& colours);

    Label source_;
    Label target_;
    std::optional<Value> anchor_source_;
    std::optional<Value> anchor_target_;
    std::vector<int> colours_;
    std::vector<int> inverse_colours_;
    std::int64_t shift_ = 0;
    std::map<Value, Value> forward_;
    std::map<Value, Value> backward_;
};

/// Topmost level at which p and f differ; p is in Gamma^f_i for that level.
/// Throws NotStrictlyBelow unless p < f.
int gamma_index(const CodingTree& t, const Point& f, const Point& p);

struct SegmentPair {
    int level = 0;
    Value from;
    Value to;
};

struct TraceEntry {
    Point point;
    Point image;
    std::optional<int> level;  // nullopt for the anchor
    std::vector<SegmentPair> pairs;
};

/// Initial-segment isomorphism (-inf, f] -> (-inf, g], assembled level by
/// level from the maps Phi_i: copy g above the level, apply the segment iso at
/// the level, transport values below along the forest iso.
///
/// Segment isos and transports are memoized per instance; a Witness needs
/// exclusive access while answering a query.
class Witness {
public:
    Witness(CodingTree source, Point f, CodingTree target, Point g);

    const CodingTree& source() const noexcept { return source_; }
    const CodingTree& target() const noexcept { return target_; }
    const Point& f() const noexcept { return f_; }
    const Point& g() const noexcept { return g_; }

    /// Phi(p) for p <= f.
    Point apply(const Point& p);
    /// Phi^-1(q) for q <= g.
    Point invert(const Point& q);
    /// Phi_i(p); throws NotInGamma unless p is in Gamma^f_i.
    Point phi(int level, const Point& p);

    void set_tracing(bool on) { tracing_ = on; }
    const std::vector<TraceEntry>& trace() const noexcept { return trace_; }
    nlohmann::json trace_json() const;

private:
    struct LevelMap {
        VertexId source_vertex;
        VertexId target_vertex;
        ForestIso psi;
        SegmentIso phi;
    };

    LevelMap& level_map(int level);
    SegmentIso* transport(VertexId x, VertexId y);
    Point map_gamma(int level, const Point& p, std::vector<SegmentPair>* pairs);

    CodingTree source_;
    CodingTree target_;
    Point f_;
    Point g_;
    std::vector<VertexId> f_branch_;
    std::vector<VertexId> g_branch_;
    std::map<int, LevelMap> levels_;
    std::map<std::pair<VertexId, VertexId>, std::optional<SegmentIso>> transports_;
    bool tracing_ = false;
    std::vector<TraceEntry> trace_;
};

Witness initial_segment_witness(const CodingTree& t, const Point& f, const Point& g);

/// Witness between two signature-equal trees; throws SignatureMismatch otherwise.
Witness cross_tree_witness(const CodingTree& t1, const Point& f, const CodingTree& t2, const Point& g);

Point phi_i(const CodingTree& t, const Point& f, const Point& g, int level, const Point& p);

struct ExpandedVertex {
    VertexId vertex = 0;
    /// Values of the point strictly above the level, root first.
    std::vector<Value> restriction;

    friend bool operator==(const ExpandedVertex&, const ExpandedVertex&) = default;
};

ExpandedVertex expanded_vertex(const CodingTree& t, const Point& p, int level);

struct InvarianceReport {
    int level = 0;
    std::size_t pairs_checked = 0;
    std::vector<std::pair<Point, Point>> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/// Samples pairs p, q <= f and checks level_equiv(p, q, level) against
/// level_equiv(Phi(p), Phi(q), level) for Phi = initial_segment_witness(t, f, g).
InvarianceReport invariance_check(const CodingTree& t, int level, const Point& f, const Point& g,
                                  std::size_t samples, std::uint64_t seed, int magnitude = 10);

}  // namespace ctree
