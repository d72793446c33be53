/**
 * Trajectory capture data model: a weighted graph, a set of simple-path
 * trajectories over it, and the captured-weight evaluation every solver uses.
 *
 * A trajectory contributes the weight of its edges between the first and the
 * last portal it passes through; with fewer than two portals it contributes 0.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tcp/error.hpp"
#include "tcp/rational.hpp"

namespace tcp {

using NodeId = std::int32_t;
using TrajId = std::int32_t;
using EdgeId = std::int32_t;

struct Point {
    Rational x;
    Rational y;

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    friend bool operator<(const Point& a, const Point& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

struct Edge {
    NodeId u;
    NodeId v;
    Rational weight;
};

struct Trajectory {
    TrajId id;
    std::vector<NodeId> nodes;
};

/// Position of a node along one trajectory.
struct Incidence {
    TrajId traj;
    std::int32_t pos;
};

/// Per-(trajectory, edge index) weight replacing f(e) for that trajectory only.
using WeightOverrides = std::map<std::pair<TrajId, std::int32_t>, Rational>;

struct Interval1D {
    Rational a;
    Rational b;
};

class Instance {
 public:
    Instance() = default;

    /// Validates and indexes. Throws error(invalid_input) on any broken invariant.
    Instance(std::string name, std::vector<std::optional<Point>> points, std::vector<Edge> edges,
             std::vector<std::vector<NodeId>> trajectories, WeightOverrides overrides = {},
             std::map<std::string, std::string> meta = {})
        : name_(std::move(name)),
          points_(std::move(points)),
          edges_(std::move(edges)),
          overrides_(std::move(overrides)),
          meta_(std::move(meta)) {
        const auto n = static_cast<NodeId>(points_.size());
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const Edge& edge = edges_[e];
            if (edge.u < 0 || edge.u >= n || edge.v < 0 || edge.v >= n)
                throw error(errc::invalid_input, "edge " + std::to_string(e) + " references an unknown node");
            if (edge.u == edge.v) throw error(errc::invalid_input, "edge " + std::to_string(e) + " is a loop");
            if (edge.weight < 0) throw error(errc::invalid_input, "edge " + std::to_string(e) + " has negative weight");
            auto [it, inserted] = edge_index_.emplace(edge_key(edge.u, edge.v), static_cast<EdgeId>(e));
            if (!inserted) throw error(errc::invalid_input, "duplicate edge " + std::to_string(e));
        }

        trajectories_.reserve(trajectories.size());
        std::vector<std::int32_t> seen(points_.size(), -1);
        for (std::size_t t = 0; t < trajectories.size(); ++t) {
            auto& nodes = trajectories[t];
            const std::string label = "trajectory " + std::to_string(t);
            if (nodes.size() < 2) throw error(errc::invalid_input, label + " has fewer than 2 nodes");
            std::vector<EdgeId> path_edges;
            path_edges.reserve(nodes.size() - 1);
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                NodeId v = nodes[i];
                if (v < 0 || v >= n) throw error(errc::invalid_input, label + " references an unknown node");
                if (seen[static_cast<std::size_t>(v)] == static_cast<std::int32_t>(t))
                    throw error(errc::invalid_input, label + " repeats node " + std::to_string(v));
                seen[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(t);
                if (i > 0) {
                    auto found = find_edge(nodes[i - 1], v);
                    if (!found)
                        throw error(errc::invalid_input, label + " uses a missing edge " + std::to_string(nodes[i - 1]) +
                                                             "-" + std::to_string(v));
                    path_edges.push_back(*found);
                }
            }
            trajectories_.push_back(Trajectory{static_cast<TrajId>(t), std::move(nodes)});
            traj_edges_.push_back(std::move(path_edges));
        }

        for (const auto& [key, weight] : overrides_) {
            auto [t, i] = key;
            if (t < 0 || t >= static_cast<TrajId>(trajectories_.size()) || i < 0 ||
                i >= static_cast<std::int32_t>(traj_edges_[static_cast<std::size_t>(t)].size()))
                throw error(errc::invalid_input, "weight override for a missing trajectory edge");
            if (weight < 0) throw error(errc::invalid_input, "negative weight override");
        }

        build_indexes();
    }

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] std::size_t node_count() const { return points_.size(); }
    [[nodiscard]] std::size_t trajectory_count() const { return trajectories_.size(); }
    [[nodiscard]] const std::vector<std::optional<Point>>& points() const { return points_; }
    [[nodiscard]] const std::optional<Point>& point(NodeId v) const { return points_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] const std::vector<Trajectory>& trajectories() const { return trajectories_; }
    [[nodiscard]] const Trajectory& trajectory(TrajId t) const { return trajectories_[static_cast<std::size_t>(t)]; }
    [[nodiscard]] const WeightOverrides& overrides() const { return overrides_; }
    [[nodiscard]] const std::map<std::string, std::string>& meta() const { return meta_; }

    [[nodiscard]] std::span<const EdgeId> trajectory_edges(TrajId t) const {
        return traj_edges_[static_cast<std::size_t>(t)];
    }

    /// Weight of the i-th edge of trajectory t (override aware).
    [[nodiscard]] const Rational& edge_weight(TrajId t, std::int32_t i) const {
        if (!overrides_.empty()) {
            auto it = overrides_.find({t, i});
            if (it != overrides_.end()) return it->second;
        }
        return edges_[static_cast<std::size_t>(traj_edges_[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)])]
            .weight;
    }

    /// prefix[i] = weight of trajectory t from its first node up to its i-th node.
    [[nodiscard]] std::span<const Rational> prefix_exact(TrajId t) const {
        return prefix_exact_[static_cast<std::size_t>(t)];
    }
    [[nodiscard]] std::span<const double> prefix_double(TrajId t) const {
        return prefix_double_[static_cast<std::size_t>(t)];
    }
    template <class T>
    [[nodiscard]] std::span<const T> prefix(TrajId t) const {
        if constexpr (std::is_same_v<T, double>)
            return prefix_double(t);
        else
            return prefix_exact(t);
    }

    [[nodiscard]] const Rational& trajectory_weight(TrajId t) const {
        return prefix_exact_[static_cast<std::size_t>(t)].back();
    }
    [[nodiscard]] const Rational& total_weight() const { return total_weight_; }
    [[nodiscard]] double total_weight_double() const { return total_weight_double_; }

    [[nodiscard]] std::span<const Incidence> incidences(NodeId v) const {
        auto begin = inc_offsets_[static_cast<std::size_t>(v)];
        auto end = inc_offsets_[static_cast<std::size_t>(v) + 1];
        return std::span<const Incidence>(inc_data_).subspan(begin, end - begin);
    }

    [[nodiscard]] std::optional<EdgeId> find_edge(NodeId u, NodeId v) const {
        auto it = edge_index_.find(edge_key(u, v));
        if (it == edge_index_.end()) return std::nullopt;
        return it->second;
    }

    [[nodiscard]] bool has_coordinates() const {
        return std::all_of(points_.begin(), points_.end(), [](const auto& p) { return p.has_value(); });
    }

    [[nodiscard]] bool is_valid_node(NodeId v) const { return v >= 0 && v < static_cast<NodeId>(points_.size()); }

 private:
    static std::uint64_t edge_key(NodeId u, NodeId v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
    }

    void build_indexes() {
        prefix_exact_.resize(trajectories_.size());
        prefix_double_.resize(trajectories_.size());
        total_weight_ = 0;
        for (std::size_t t = 0; t < trajectories_.size(); ++t) {
            auto& exact = prefix_exact_[t];
            auto& approx = prefix_double_[t];
            const auto len = trajectories_[t].nodes.size();
            exact.assign(len, Rational(0));
            approx.assign(len, 0.0);
            for (std::size_t i = 1; i < len; ++i) {
                exact[i] = exact[i - 1] + edge_weight(static_cast<TrajId>(t), static_cast<std::int32_t>(i - 1));
                approx[i] = exact[i].get_d();
            }
            total_weight_ += exact.back();
        }
        total_weight_double_ = total_weight_.get_d();

        inc_offsets_.assign(points_.size() + 1, 0);
        for (const auto& traj : trajectories_)
            for (NodeId v : traj.nodes) ++inc_offsets_[static_cast<std::size_t>(v) + 1];
        for (std::size_t v = 0; v < points_.size(); ++v) inc_offsets_[v + 1] += inc_offsets_[v];
        inc_data_.resize(inc_offsets_.back());
        std::vector<std::size_t> fill(inc_offsets_.begin(), inc_offsets_.end() - 1);
        for (const auto& traj : trajectories_)
            for (std::size_t i = 0; i < traj.nodes.size(); ++i)
                inc_data_[fill[static_cast<std::size_t>(traj.nodes[i])]++] =
                    Incidence{traj.id, static_cast<std::int32_t>(i)};
    }

    std::string name_;
    std::vector<std::optional<Point>> points_;
    std::vector<Edge> edges_;
    std::unordered_map<std::uint64_t, EdgeId> edge_index_;
    std::vector<Trajectory> trajectories_;
    std::vector<std::vector<EdgeId>> traj_edges_;
    WeightOverrides overrides_;
    std::map<std::string, std::string> meta_;
    std::vector<std::vector<Rational>> prefix_exact_;
    std::vector<std::vector<double>> prefix_double_;
    Rational total_weight_{0};
    double total_weight_double_ = 0.0;
    std::vector<std::size_t> inc_offsets_;
    std::vector<Incidence> inc_data_;
};

struct Solution {
    std::vector<NodeId> portals;  // sorted, unique
    Rational value{0};
    bool proven_optimal = false;
};

namespace detail {

inline void check_portals(const Instance& instance, std::span<const NodeId> portals) {
    for (NodeId p : portals)
        if (!instance.is_valid_node(p)) throw error(errc::invalid_portal, "unknown node " + std::to_string(p));
}

struct Span {
    std::int32_t lo = std::numeric_limits<std::int32_t>::max();
    std::int32_t hi = -1;
};

/// First/last portal position on every trajectory touched by the portal set.
inline std::vector<Span> portal_spans(const Instance& instance, std::span<const NodeId> portals) {
    std::vector<Span> spans(instance.trajectory_count());
    for (NodeId p : portals)
        for (const Incidence& inc : instance.incidences(p)) {
            Span& s = spans[static_cast<std::size_t>(inc.traj)];
            s.lo = std::min(s.lo, inc.pos);
            s.hi = std::max(s.hi, inc.pos);
        }
    return spans;
}

}  // namespace detail

/// Captured weight of every trajectory, indexed by TrajId.
inline std::vector<Rational> captured_per_trajectory(const Instance& instance, std::span<const NodeId> portals) {
    detail::check_portals(instance, portals);
    auto spans = detail::portal_spans(instance, portals);
    std::vector<Rational> captured(instance.trajectory_count(), Rational(0));
    for (std::size_t t = 0; t < spans.size(); ++t) {
        const auto& s = spans[t];
        if (s.hi > s.lo) {
            auto prefix = instance.prefix_exact(static_cast<TrajId>(t));
            captured[t] = prefix[static_cast<std::size_t>(s.hi)] - prefix[static_cast<std::size_t>(s.lo)];
        }
    }
    return captured;
}

/// Total captured weight of a portal set; duplicates in `portals` are harmless.
inline Rational evaluate(const Instance& instance, std::span<const NodeId> portals) {
    detail::check_portals(instance, portals);
    auto spans = detail::portal_spans(instance, portals);
    Rational total(0);
    for (std::size_t t = 0; t < spans.size(); ++t) {
        const auto& s = spans[t];
        if (s.hi > s.lo) {
            auto prefix = instance.prefix_exact(static_cast<TrajId>(t));
            total += prefix[static_cast<std::size_t>(s.hi)] - prefix[static_cast<std::size_t>(s.lo)];
        }
    }
    return total;
}

inline double evaluate_double(const Instance& instance, std::span<const NodeId> portals) {
    auto spans = detail::portal_spans(instance, portals);
    double total = 0.0;
    for (std::size_t t = 0; t < spans.size(); ++t) {
        const auto& s = spans[t];
        if (s.hi > s.lo) {
            auto prefix = instance.prefix_double(static_cast<TrajId>(t));
            total += prefix[static_cast<std::size_t>(s.hi)] - prefix[static_cast<std::size_t>(s.lo)];
        }
    }
    return total;
}

/// Sorts and dedupes the portal set and evaluates it exactly.
inline Solution make_solution(const Instance& instance, std::vector<NodeId> portals, bool proven_optimal = false) {
    std::sort(portals.begin(), portals.end());
    portals.erase(std::unique(portals.begin(), portals.end()), portals.end());
    Solution s;
    s.value = evaluate(instance, portals);
    s.portals = std::move(portals);
    s.proven_optimal = proven_optimal;
    return s;
}

/// Maximum number of distinct trajectories through a single node or a single edge.
/// Zero for an instance without trajectories.
inline int depth(const Instance& instance) {
    std::size_t best = 0;
    for (NodeId v = 0; v < static_cast<NodeId>(instance.node_count()); ++v)
        best = std::max(best, instance.incidences(v).size());
    std::vector<int> per_edge(instance.edges().size(), 0);
    for (const auto& traj : instance.trajectories())
        for (EdgeId e : instance.trajectory_edges(traj.id)) ++per_edge[static_cast<std::size_t>(e)];
    for (int c : per_edge) best = std::max(best, static_cast<std::size_t>(c));
    return static_cast<int>(best);
}

/// Lines and directions in exact arithmetic. A direction is the primitive integer
/// vector (dx, dy) with dx > 0, or dx == 0 and dy > 0.
struct Direction {
    Integer dx;
    Integer dy;

    friend bool operator==(const Direction& a, const Direction& b) { return a.dx == b.dx && a.dy == b.dy; }
    friend bool operator<(const Direction& a, const Direction& b) {
        if (a.dx != b.dx) return a.dx < b.dx;
        return a.dy < b.dy;
    }
};

/// Carrier line of a direction: all points p with dy*p.x - dx*p.y == offset.
struct Line {
    Direction direction;
    Rational offset;

    friend bool operator<(const Line& a, const Line& b) {
        if (!(a.direction == b.direction)) return a.direction < b.direction;
        return a.offset < b.offset;
    }
    friend bool operator==(const Line& a, const Line& b) { return a.direction == b.direction && a.offset == b.offset; }

    /// Coordinate along the line (scaled by |direction|^2 relative to arc length).
    [[nodiscard]] Rational coordinate(const Point& p) const { return direction.dx * p.x + direction.dy * p.y; }
};

/// Primitive direction of the non-zero vector (vx, vy).
inline Direction primitive_direction(const Rational& vx, const Rational& vy) {
    Integer common = lcm(vx.get_den(), vy.get_den());
    Integer ix = vx.get_num() * (common / vx.get_den());
    Integer iy = vy.get_num() * (common / vy.get_den());
    Integer g = gcd(ix, iy);
    if (g == 0) throw error(errc::invalid_input, "zero-length direction");
    ix /= g;
    iy /= g;
    if (ix < 0 || (ix == 0 && iy < 0)) {
        ix = -ix;
        iy = -iy;
    }
    return Direction{ix, iy};
}

inline Line line_through(const Point& p, const Point& q) {
    Direction d = primitive_direction(q.x - p.x, q.y - p.y);
    Rational offset = d.dy * p.x - d.dx * p.y;
    return Line{std::move(d), std::move(offset)};
}

/// Carrier line of a trajectory whose nodes are all collinear; nullopt otherwise
/// (including missing coordinates).
inline std::optional<Line> trajectory_line(const Instance& instance, TrajId t) {
    const auto& nodes = instance.trajectory(t).nodes;
    for (NodeId v : nodes)
        if (!instance.point(v)) return std::nullopt;
    const Point& first = *instance.point(nodes.front());
    const Point& second = *instance.point(nodes[1]);
    if (first == second) return std::nullopt;
    Line line = line_through(first, second);
    for (NodeId v : nodes)
        if (line.direction.dy * instance.point(v)->x - line.direction.dx * instance.point(v)->y != line.offset)
            return std::nullopt;
    return line;
}

/// Partitions trajectories by the direction of their carrier line. Classes are
/// ordered by direction; members by TrajId.
inline std::vector<std::vector<TrajId>> decompose_orientation_classes(const Instance& instance) {
    std::map<Direction, std::vector<TrajId>> classes;
    for (const auto& traj : instance.trajectories()) {
        auto line = trajectory_line(instance, traj.id);
        if (!line)
            throw error(errc::not_decomposable,
                        "trajectory " + std::to_string(traj.id) + " is not collinear or lacks coordinates");
        classes[line->direction].push_back(traj.id);
    }
    std::vector<std::vector<TrajId>> out;
    out.reserve(classes.size());
    for (auto& [dir, members] : classes) out.push_back(std::move(members));
    return out;
}

}  // namespace tcp
