#pragma once

#include <optional>
#include <vector>

#include "tcp/approx.hpp"
#include "tcp/instance.hpp"
#include "tcp/portal_state.hpp"

namespace tcp {

/// Numerical slack for comparisons of double-valued captured weights.
inline double value_tolerance(const Instance& instance) { return 1e-12 * (instance.total_weight_double() + 1.0); }

/// Greedy portal selection starting from both endpoints of `start`.
///
/// Each step adds the node with the largest increase of captured weight (lowest
/// id on ties). When no node increases the value, two free slots are spent on the
/// endpoints of the heaviest trajectory that is still uncaptured; with a single
/// free slot the remaining budget stays unused.
inline std::vector<NodeId> greedy_portals(const Instance& instance, int k, TrajId start) {
    if (k < 2) throw error(errc::invalid_k, "k must be at least 2");
    std::vector<NodeId> none;
    if (instance.trajectory_count() == 0) return none;
    PortalState<double> state(instance);
    const auto& first = instance.trajectory(start).nodes;
    state.add(first.front());
    state.add(first.back());

    const double tol = value_tolerance(instance);
    const auto order = trajectories_by_weight(instance);
    const auto n = static_cast<NodeId>(instance.node_count());
    while (static_cast<int>(state.size()) < k) {
        NodeId best = -1;
        double best_gain = tol;
        for (NodeId v = 0; v < n; ++v) {
            if (state.contains(v) || instance.incidences(v).empty()) continue;
            const double gain = state.gain_if_added(v);
            if (gain > best_gain + (best < 0 ? 0.0 : tol)) {
                best = v;
                best_gain = gain;
            }
        }
        if (best >= 0) {
            state.add(best);
            continue;
        }
        if (k - static_cast<int>(state.size()) < 2) break;
        bool placed = false;
        for (TrajId t : order) {
            const auto& nodes = instance.trajectory(t).nodes;
            if (instance.trajectory_weight(t) == 0) break;
            if (state.contains(nodes.front()) || state.contains(nodes.back())) continue;
            if (state.count_on(t) >= 2 && state.hi_on(t) > state.lo_on(t)) continue;
            state.add(nodes.front());
            state.add(nodes.back());
            placed = true;
            break;
        }
        if (!placed) break;
    }
    return {state.portals().begin(), state.portals().end()};
}

/// Greedy from the heaviest trajectory.
inline Solution greedy(const Instance& instance, int k) {
    if (k < 2) throw error(errc::invalid_k, "k must be at least 2");
    if (instance.trajectory_count() == 0) return Solution{};
    return make_solution(instance, greedy_portals(instance, k, trajectories_by_weight(instance).front()));
}

}  // namespace tcp
