/**
 * Single-portal swap neighborhoods and iterated local search.
 *
 * A neighbor replaces one portal p by a non-portal q. In the global
 * neighborhood q is any other node; in the local one q must share a trajectory
 * with at least one portal other than p.
 */
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcp/greedy.hpp"
#include "tcp/instance.hpp"
#include "tcp/portal_state.hpp"

namespace tcp {

enum class NeighborhoodMode { local, global };

inline const char* mode_name(NeighborhoodMode m) { return m == NeighborhoodMode::local ? "local" : "global"; }

inline NeighborhoodMode parse_mode(const std::string& s) {
    if (s == "local") return NeighborhoodMode::local;
    if (s == "global") return NeighborhoodMode::global;
    throw error(errc::invalid_input, "unknown neighborhood '" + s + "'");
}

/// Any combination of limits; unset fields do not limit.
struct Termination {
    std::optional<std::int64_t> max_iterations;
    std::optional<std::int64_t> max_stagnation;  // iterations without improving the best value
    std::optional<double> max_wall_seconds;
};

struct Move {
    NodeId from;
    NodeId to;
};

namespace detail {

/// cover[v] = number of (portal, trajectory through that portal) pairs whose
/// trajectory also contains v. A node is a local target for moving p iff it is
/// covered by some pair that does not belong to p.
class CoverCounts {
 public:
    explicit CoverCounts(const Instance& instance)
        : instance_(&instance), cover_(instance.node_count(), 0), own_(instance.node_count(), 0) {}

    void reset(std::span<const NodeId> portals) {
        std::fill(cover_.begin(), cover_.end(), 0);
        for (NodeId p : portals) apply(p, +1);
    }

    void apply(NodeId p, int sign) {
        for (const Incidence& inc : instance_->incidences(p))
            for (NodeId v : instance_->trajectory(inc.traj).nodes) cover_[static_cast<std::size_t>(v)] += sign;
    }

    /// Number of trajectories through p that contain v.
    [[nodiscard]] int own(NodeId p, NodeId v) const {
        int n = 0;
        for (const Incidence& a : instance_->incidences(p))
            for (const Incidence& b : instance_->incidences(v))
                if (a.traj == b.traj) ++n;
        return n;
    }

    [[nodiscard]] bool is_local_target(NodeId p, NodeId v) const {
        const int c = cover_[static_cast<std::size_t>(v)];
        return c > 0 && c > own(p, v);
    }

    /// All local targets for moving p, ascending. `portal` flags current portals.
    void targets(NodeId p, const std::vector<char>& portal, std::vector<NodeId>& out) {
        out.clear();
        for (const Incidence& inc : instance_->incidences(p))
            for (NodeId v : instance_->trajectory(inc.traj).nodes) ++own_[static_cast<std::size_t>(v)];
        for (std::size_t v = 0; v < cover_.size(); ++v)
            if (!portal[v] && cover_[v] > own_[v]) out.push_back(static_cast<NodeId>(v));
        for (const Incidence& inc : instance_->incidences(p))
            for (NodeId v : instance_->trajectory(inc.traj).nodes) own_[static_cast<std::size_t>(v)] = 0;
    }

 private:
    const Instance* instance_;
    std::vector<int> cover_;
    std::vector<int> own_;
};

}  // namespace detail

/// Visits every neighbor move of `portals` in (portal ascending, target ascending) order.
template <class F>
void for_each_move(const Instance& instance, std::span<const NodeId> portals, NeighborhoodMode mode, F&& fn) {
    std::vector<NodeId> sorted(portals.begin(), portals.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<char> portal(instance.node_count(), 0);
    for (NodeId p : sorted) portal[static_cast<std::size_t>(p)] = 1;
    detail::CoverCounts cover(instance);
    if (mode == NeighborhoodMode::local) cover.reset(sorted);
    std::vector<NodeId> targets;
    for (NodeId p : sorted) {
        if (mode == NeighborhoodMode::local) {
            cover.targets(p, portal, targets);
            for (NodeId q : targets) fn(Move{p, q});
        } else {
            for (NodeId q = 0; q < static_cast<NodeId>(instance.node_count()); ++q)
                if (!portal[static_cast<std::size_t>(q)]) fn(Move{p, q});
        }
    }
}

/// Materialized neighbor portal sets, each sorted.
inline std::vector<std::vector<NodeId>> neighbors(const Instance& instance, std::span<const NodeId> portals,
                                                  NeighborhoodMode mode) {
    std::vector<std::vector<NodeId>> out;
    for_each_move(instance, portals, mode, [&](Move m) {
        std::vector<NodeId> next;
        for (NodeId p : portals)
            if (p != m.from) next.push_back(p);
        next.push_back(m.to);
        std::sort(next.begin(), next.end());
        out.push_back(std::move(next));
    });
    return out;
}

struct IlsOptions {
    NeighborhoodMode mode = NeighborhoodMode::local;
    Termination termination;
    /// Called after every accepted move with (iteration, value).
    std::function<void(std::int64_t, double)> observer;
};

/// Steepest ascent over single-portal swaps, starting from `init` (greedy when unset).
inline Solution ils(const Instance& instance, int k, const std::optional<Solution>& init = std::nullopt,
                    const IlsOptions& options = {}) {
    if (k < 2) throw error(errc::invalid_k, "k must be at least 2");
    if (instance.trajectory_count() == 0) return init ? *init : Solution{};
    const auto start = std::chrono::steady_clock::now();
    std::vector<NodeId> portals = init ? init->portals : greedy_portals(instance, k, trajectories_by_weight(instance).front());

    PortalState<double> state(instance);
    state.assign(portals);
    std::vector<char> portal(instance.node_count(), 0);
    for (NodeId p : portals) portal[static_cast<std::size_t>(p)] = 1;
    detail::CoverCounts cover(instance);
    const bool local = options.mode == NeighborhoodMode::local;
    if (local) cover.reset(portals);

    const double tol = value_tolerance(instance);
    const auto n = static_cast<NodeId>(instance.node_count());
    std::vector<NodeId> targets;
    std::int64_t iteration = 0;
    for (;;) {
        const auto& t = options.termination;
        if (t.max_iterations && iteration >= *t.max_iterations) break;
        if (t.max_wall_seconds &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >= *t.max_wall_seconds)
            break;

        double best = state.value();
        std::optional<Move> best_move;
        std::vector<NodeId> current(state.portals().begin(), state.portals().end());
        std::sort(current.begin(), current.end());
        for (NodeId p : current) {
            if (local) {
                cover.targets(p, portal, targets);
            } else {
                targets.clear();
                for (NodeId q = 0; q < n; ++q)
                    if (!portal[static_cast<std::size_t>(q)]) targets.push_back(q);
            }
            state.remove(p);
            for (NodeId q : targets) {
                const double value = state.value() + state.gain_if_added(q);
                if (value > best + tol) {
                    best = value;
                    best_move = Move{p, q};
                }
            }
            state.add(p);
        }
        if (!best_move) break;
        state.remove(best_move->from);
        state.add(best_move->to);
        portal[static_cast<std::size_t>(best_move->from)] = 0;
        portal[static_cast<std::size_t>(best_move->to)] = 1;
        if (local) {
            cover.apply(best_move->from, -1);
            cover.apply(best_move->to, +1);
        }
        ++iteration;
        if (options.observer) options.observer(iteration, state.value());
    }
    return make_solution(instance, {state.portals().begin(), state.portals().end()});
}

}  // namespace tcp
