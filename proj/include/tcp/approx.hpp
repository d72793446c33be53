/**
 * Polynomial-time approximations.
 *
 * approx_orientation: trajectories are grouped by direction; inside one
 * direction class every carrier line is an exact 1D instance, the lines are
 * combined by a budget knapsack, and the best class wins. Guarantee OPT / K for
 * K classes.
 *
 * approx_depth_greedy: both endpoints of the floor(k/2) heaviest trajectories,
 * with leftover budget spent on the next heaviest ones. Guarantee
 * L* / L <= floor(k*Delta/2) / floor(k/2).
 */
#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "tcp/dp1d.hpp"
#include "tcp/instance.hpp"

namespace tcp {

namespace detail {

/// One carrier line: its nodes in coordinate order and the exact DP over them.
struct LineGroup {
    std::vector<NodeId> nodes;
    LineDp dp;
};

inline LineGroup solve_line_group(const Instance& instance, const Line& line, const std::vector<TrajId>& members,
                                  int k) {
    std::vector<std::pair<Rational, NodeId>> keyed;
    {
        std::set<NodeId> seen;
        for (TrajId t : members)
            for (NodeId v : instance.trajectory(t).nodes)
                if (seen.insert(v).second) keyed.emplace_back(line.coordinate(*instance.point(v)), v);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const int m = static_cast<int>(keyed.size());
    std::vector<NodeId> nodes;
    nodes.reserve(keyed.size());
    std::map<NodeId, int> index;
    for (int i = 0; i < m; ++i) {
        nodes.push_back(keyed[static_cast<std::size_t>(i)].second);
        index[keyed[static_cast<std::size_t>(i)].second] = i;
    }

    // Each trajectory must cover a contiguous, monotone run of the line's nodes;
    // that is the path property the 1D reduction relies on.
    struct Run {
        int lo;
        int hi;
        std::vector<Rational> weight_at;  // cumulative weight at line index lo..hi
    };
    std::vector<Run> runs;
    for (TrajId t : members) {
        const auto& tn = instance.trajectory(t).nodes;
        std::vector<int> idx;
        idx.reserve(tn.size());
        for (NodeId v : tn) idx.push_back(index.at(v));
        const bool ascending = idx[1] > idx[0];
        for (std::size_t i = 1; i < idx.size(); ++i)
            if ((idx[i] > idx[i - 1]) != ascending || std::abs(idx[i] - idx[i - 1]) != 1)
                throw error(errc::not_decomposable,
                            "trajectory " + std::to_string(t) + " breaks the path property on its line");
        auto prefix = instance.prefix_exact(t);
        Run run;
        run.lo = std::min(idx.front(), idx.back());
        run.hi = std::max(idx.front(), idx.back());
        run.weight_at.assign(static_cast<std::size_t>(run.hi - run.lo + 1), Rational(0));
        for (std::size_t i = 0; i < idx.size(); ++i)
            run.weight_at[static_cast<std::size_t>(idx[i] - run.lo)] =
                ascending ? prefix[i] : prefix.back() - prefix[i];
        runs.push_back(std::move(run));
    }

    GainTable gain(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        auto& row = gain[static_cast<std::size_t>(i)];
        row.assign(static_cast<std::size_t>(m - i - 1), Rational(0));
        for (const Run& run : runs) {
            if (run.lo > i || run.hi <= i) continue;
            const Rational& base = run.weight_at[static_cast<std::size_t>(i - run.lo)];
            for (int j = i + 1; j <= run.hi; ++j)
                row[static_cast<std::size_t>(j - i - 1)] += run.weight_at[static_cast<std::size_t>(j - run.lo)] - base;
        }
    }
    return LineGroup{std::move(nodes), LineDp(gain, k)};
}

}  // namespace detail

/// Best solution that spends the whole budget inside a single direction class.
/// proven_optimal is set when there is only one class (the DP is then exact).
inline Solution approx_orientation(const Instance& instance, int k) {
    if (k < 2) throw error(errc::invalid_k, "k must be at least 2");
    const auto classes = decompose_orientation_classes(instance);

    std::vector<NodeId> best_portals;
    std::optional<Rational> best_value;
    for (const auto& cls : classes) {
        std::map<Line, std::vector<TrajId>> lines;
        for (TrajId t : cls) lines[*trajectory_line(instance, t)].push_back(t);

        std::vector<detail::LineGroup> groups;
        for (const auto& [line, members] : lines) groups.push_back(detail::solve_line_group(instance, line, members, k));

        // Knapsack over lines: value[b] = best with budget b over the lines seen so far.
        std::vector<Rational> value(static_cast<std::size_t>(k + 1), Rational(0));
        std::vector<std::vector<int>> spent(groups.size(), std::vector<int>(static_cast<std::size_t>(k + 1), 0));
        for (std::size_t g = 0; g < groups.size(); ++g) {
            std::vector<Rational> next = value;
            for (int b = 0; b <= k; ++b)
                for (int use = 2; use <= std::min(b, groups[g].dp.max_count()); ++use) {
                    Rational candidate = value[static_cast<std::size_t>(b - use)] + groups[g].dp.best(use);
                    if (candidate > next[static_cast<std::size_t>(b)]) {
                        next[static_cast<std::size_t>(b)] = std::move(candidate);
                        spent[g][static_cast<std::size_t>(b)] = use;
                    }
                }
            value = std::move(next);
        }
        if (best_value && !(value[static_cast<std::size_t>(k)] > *best_value)) continue;

        std::vector<NodeId> portals;
        int budget = k;
        for (std::size_t g = groups.size(); g-- > 0;) {
            const int use = spent[g][static_cast<std::size_t>(budget)];
            if (use == 0) continue;
            for (int i : groups[g].dp.positions(use)) portals.push_back(groups[g].nodes[static_cast<std::size_t>(i)]);
            budget -= use;
        }
        best_value = value[static_cast<std::size_t>(k)];
        best_portals = std::move(portals);
    }
    return make_solution(instance, std::move(best_portals), classes.size() <= 1);
}

/// Trajectory ids by weight, heaviest first, ties by lower id.
inline std::vector<TrajId> trajectories_by_weight(const Instance& instance) {
    std::vector<TrajId> order(instance.trajectory_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](TrajId a, TrajId b) {
        return instance.trajectory_weight(a) > instance.trajectory_weight(b);
    });
    return order;
}

inline Solution approx_depth_greedy(const Instance& instance, int k) {
    if (k < 2) throw error(errc::invalid_k, "k must be at least 2");
    std::vector<NodeId> portals;
    auto has = [&](NodeId v) { return std::find(portals.begin(), portals.end(), v) != portals.end(); };
    for (TrajId t : trajectories_by_weight(instance)) {
        const int remaining = k - static_cast<int>(portals.size());
        if (remaining <= 0) break;
        const auto& nodes = instance.trajectory(t).nodes;
        std::vector<NodeId> needed;
        for (NodeId v : {nodes.front(), nodes.back()})
            if (!has(v)) needed.push_back(v);
        if (static_cast<int>(needed.size()) > remaining) continue;
        portals.insert(portals.end(), needed.begin(), needed.end());
    }
    return make_solution(instance, std::move(portals));
}

}  // namespace tcp
