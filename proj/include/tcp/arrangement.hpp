/**
 * Exact planar geometry: segment intersection, arrangement graphs of segment
 * sets and snapping of raw polyline traces onto a regular grid.
 *
 * Edge weights along a carrier line of primitive direction d are
 * |delta(d . p)| * L(d) / |d|^2, where L(d) is |d| itself when it is rational and
 * |d| rounded to 30 significant digits otherwise. All edges of one direction
 * share L(d), so overlapping segments agree on shared edges and subdividing a
 * segment never changes its total weight.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "tcp/instance.hpp"

namespace tcp {

struct Segment {
    Point p;
    Point q;
};

using Polyline = std::vector<Point>;

/// Disjoint, a single shared point, or a shared collinear subsegment.
using Intersection = std::variant<std::monostate, Point, Segment>;

namespace detail {

inline Rational cross(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by) {
    return ax * by - ay * bx;
}

}  // namespace detail

inline Intersection segment_intersection(const Segment& s1, const Segment& s2) {
    const Rational d1x = s1.q.x - s1.p.x, d1y = s1.q.y - s1.p.y;
    const Rational d2x = s2.q.x - s2.p.x, d2y = s2.q.y - s2.p.y;
    const Rational wx = s2.p.x - s1.p.x, wy = s2.p.y - s1.p.y;
    const Rational denom = detail::cross(d1x, d1y, d2x, d2y);
    if (denom != 0) {
        const Rational t = detail::cross(wx, wy, d2x, d2y) / denom;
        const Rational u = detail::cross(wx, wy, d1x, d1y) / denom;
        if (t < 0 || t > 1 || u < 0 || u > 1) return std::monostate{};
        return Point{s1.p.x + t * d1x, s1.p.y + t * d1y};
    }
    if (detail::cross(wx, wy, d1x, d1y) != 0) return std::monostate{};
    const Rational len2 = d1x * d1x + d1y * d1y;
    Rational t0 = (wx * d1x + wy * d1y) / len2;
    Rational t1 = ((s2.q.x - s1.p.x) * d1x + (s2.q.y - s1.p.y) * d1y) / len2;
    if (t0 > t1) std::swap(t0, t1);
    const Rational lo = t0 > 0 ? t0 : Rational(0);
    const Rational hi = t1 < 1 ? t1 : Rational(1);
    if (lo > hi) return std::monostate{};
    Point a{s1.p.x + lo * d1x, s1.p.y + lo * d1y};
    if (lo == hi) return a;
    return Segment{std::move(a), Point{s1.p.x + hi * d1x, s1.p.y + hi * d1y}};
}

/// Length scale L(d) for a primitive direction; see the file comment.
inline Rational direction_length(const Direction& d) {
    return sqrt_rational(Rational(d.dx * d.dx + d.dy * d.dy), 30);
}

/// Surrogate length of the segment p-q.
inline Rational segment_length(const Point& p, const Point& q) {
    const Direction d = primitive_direction(q.x - p.x, q.y - p.y);
    Rational ds = d.dx * (q.x - p.x) + d.dy * (q.y - p.y);
    if (ds < 0) ds = -ds;
    return ds * direction_length(d) / Rational(d.dx * d.dx + d.dy * d.dy);
}

namespace detail {

struct BBox {
    double xmin, xmax, ymin, ymax;
};

inline BBox bbox_of(const Segment& s) {
    auto widen = [](double v) { return std::abs(v) * 1e-12 + 1e-300; };
    double x0 = s.p.x.get_d(), x1 = s.q.x.get_d(), y0 = s.p.y.get_d(), y1 = s.q.y.get_d();
    BBox b{std::min(x0, x1), std::max(x0, x1), std::min(y0, y1), std::max(y0, y1)};
    b.xmin -= widen(b.xmin);
    b.xmax += widen(b.xmax);
    b.ymin -= widen(b.ymin);
    b.ymax += widen(b.ymax);
    return b;
}

inline bool overlap(const BBox& a, const BBox& b) {
    return a.xmin <= b.xmax && b.xmin <= a.xmax && a.ymin <= b.ymax && b.ymin <= a.ymax;
}

/// Accumulates nodes, edges and trajectories keyed by exact points.
class GraphAssembler {
 public:
    /// Registers a trajectory through the given points, in order. Points must be
    /// distinct and consecutive points collinear with known primitive direction.
    void add_path(std::vector<Point> points) { paths_.push_back(std::move(points)); }

    Instance finish(std::string name, std::map<std::string, std::string> meta = {}) {
        std::vector<Point> all;
        for (const auto& path : paths_) all.insert(all.end(), path.begin(), path.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        std::map<Point, NodeId> ids;
        for (std::size_t i = 0; i < all.size(); ++i) ids.emplace(all[i], static_cast<NodeId>(i));

        std::vector<Edge> edges;
        std::unordered_map<std::uint64_t, std::size_t> edge_index;
        std::map<Direction, Rational> scale_cache;
        std::vector<std::vector<NodeId>> trajectories;
        trajectories.reserve(paths_.size());
        for (const auto& path : paths_) {
            std::vector<NodeId> nodes;
            nodes.reserve(path.size());
            for (const Point& p : path) nodes.push_back(ids.at(p));
            for (std::size_t i = 1; i < path.size(); ++i) {
                NodeId u = nodes[i - 1], v = nodes[i];
                std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) |
                                    static_cast<std::uint32_t>(std::max(u, v));
                if (edge_index.count(key)) continue;
                const Direction d = primitive_direction(path[i].x - path[i - 1].x, path[i].y - path[i - 1].y);
                auto it = scale_cache.find(d);
                if (it == scale_cache.end()) it = scale_cache.emplace(d, direction_length(d)).first;
                Rational ds = d.dx * (path[i].x - path[i - 1].x) + d.dy * (path[i].y - path[i - 1].y);
                if (ds < 0) ds = -ds;
                Rational w = ds * it->second / Rational(d.dx * d.dx + d.dy * d.dy);
                edge_index.emplace(key, edges.size());
                edges.push_back(Edge{u, v, std::move(w)});
            }
            trajectories.push_back(std::move(nodes));
        }
        std::vector<std::optional<Point>> points(all.begin(), all.end());
        return Instance(std::move(name), std::move(points), std::move(edges), std::move(trajectories), {},
                        std::move(meta));
    }

 private:
    std::vector<std::vector<Point>> paths_;
};

}  // namespace detail

/// Arrangement graph of a segment set. Nodes are all endpoints and pairwise
/// intersection points, numbered in lexicographic (x, y) order; every input
/// segment becomes one trajectory running from p to q through the arrangement
/// points on it.
inline Instance build_arrangement(const std::vector<Segment>& segments, std::string name = "arrangement",
                                  std::map<std::string, std::string> meta = {}) {
    if (segments.empty()) throw error(errc::invalid_input, "no segments");
    for (std::size_t i = 0; i < segments.size(); ++i)
        if (segments[i].p == segments[i].q)
            throw error(errc::invalid_input, "segment " + std::to_string(i) + " has zero length");

    std::vector<std::vector<Point>> on_segment(segments.size());
    std::vector<detail::BBox> boxes;
    boxes.reserve(segments.size());
    for (std::size_t i = 0; i < segments.size(); ++i) {
        on_segment[i].push_back(segments[i].p);
        on_segment[i].push_back(segments[i].q);
        boxes.push_back(detail::bbox_of(segments[i]));
    }
    for (std::size_t i = 0; i < segments.size(); ++i)
        for (std::size_t j = i + 1; j < segments.size(); ++j) {
            if (!detail::overlap(boxes[i], boxes[j])) continue;
            auto hit = segment_intersection(segments[i], segments[j]);
            if (auto* p = std::get_if<Point>(&hit)) {
                on_segment[i].push_back(*p);
                on_segment[j].push_back(*p);
            } else if (auto* s = std::get_if<Segment>(&hit)) {
                for (auto* list : {&on_segment[i], &on_segment[j]}) {
                    list->push_back(s->p);
                    list->push_back(s->q);
                }
            }
        }

    detail::GraphAssembler assembler;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Segment& seg = segments[i];
        const Rational dx = seg.q.x - seg.p.x, dy = seg.q.y - seg.p.y;
        auto& pts = on_segment[i];
        std::vector<std::pair<Rational, std::size_t>> keyed;
        keyed.reserve(pts.size());
        for (std::size_t k = 0; k < pts.size(); ++k)
            keyed.emplace_back((pts[k].x - seg.p.x) * dx + (pts[k].y - seg.p.y) * dy, k);
        std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Point> path;
        for (std::size_t k = 0; k < keyed.size(); ++k) {
            if (k > 0 && keyed[k].first == keyed[k - 1].first) continue;
            path.push_back(pts[keyed[k].second]);
        }
        assembler.add_path(std::move(path));
    }
    return assembler.finish(std::move(name), std::move(meta));
}

struct SnapResult {
    Instance instance;
    std::size_t dropped = 0;  // polylines with fewer than two distinct grid nodes
};

/// Snaps every polyline vertex to its nearest grid node (multiples of pitch; ties
/// toward the smaller coordinate), collapses repeats, and splits a trace where it
/// revisits a node so that every trajectory is a simple path. The edge into the
/// revisited node starts the next piece.
inline SnapResult snap_polylines(const std::vector<Polyline>& polylines, const Rational& pitch,
                                 std::string name = "snapped") {
    if (pitch <= 0) throw error(errc::invalid_input, "grid pitch must be positive");
    auto snap = [&](const Rational& coord) {
        Rational r = coord / pitch - Rational(1, 2);
        Integer c;
        mpz_cdiv_q(c.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
        return c;
    };

    SnapResult result;
    detail::GraphAssembler assembler;
    for (const Polyline& line : polylines) {
        std::vector<Point> snapped;
        for (const Point& p : line) {
            Point g{Rational(snap(p.x)) * pitch, Rational(snap(p.y)) * pitch};
            if (snapped.empty() || snapped.back() != g) snapped.push_back(std::move(g));
        }
        if (snapped.size() < 2) {
            ++result.dropped;
            continue;
        }
        std::vector<Point> piece;
        for (const Point& p : snapped) {
            if (std::find(piece.begin(), piece.end(), p) != piece.end()) {
                Point last = piece.back();
                if (piece.size() >= 2) assembler.add_path(std::move(piece));
                piece = {std::move(last)};
            }
            piece.push_back(p);
        }
        if (piece.size() >= 2) assembler.add_path(std::move(piece));
    }
    result.instance = assembler.finish(std::move(name));
    return result;
}

}  // namespace tcp
