#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "tcp/greedy.hpp"
#include "tcp/local_search.hpp"
#include "tcp/portal_state.hpp"
#include "tcp/random.hpp"

namespace tcp {

struct SaParams {
    std::optional<double> start_temperature;  // default: 5% of the total trajectory weight
    double cooling_factor = 0.999;
    std::int64_t reheat_after = 1000;
    Termination termination{.max_iterations = 100'000, .max_stagnation = {}, .max_wall_seconds = {}};
    int workers = 1;
    std::uint64_t seed = 0;
    NeighborhoodMode mode = NeighborhoodMode::local;
};

/// Probability of moving from `current` to `candidate` at temperature T.
inline double boltzmann(double current, double candidate, double temperature) {
    if (candidate >= current) return 1.0;
    if (temperature <= 0.0) return 0.0;
    return std::exp(-(current - candidate) / temperature);
}

inline void validate(const SaParams& p) {
    if (p.start_temperature && !(*p.start_temperature > 0)) throw error(errc::invalid_input, "start temperature must be positive");
    if (!(p.cooling_factor > 0 && p.cooling_factor < 1)) throw error(errc::invalid_input, "cooling factor must lie in (0,1)");
    if (p.reheat_after < 1) throw error(errc::invalid_input, "reheat_after must be positive");
    if (p.workers < 1) throw error(errc::invalid_input, "workers must be positive");
    const auto& t = p.termination;
    if (!t.max_iterations && !t.max_stagnation && !t.max_wall_seconds)
        throw error(errc::invalid_input, "annealing needs a termination criterion");
}

namespace detail {

struct SaRun {
    std::vector<NodeId> portals;
    double value = 0.0;
};

inline SaRun anneal(const Instance& instance, const std::vector<NodeId>& init, const SaParams& params, Rng rng) {
    const auto start = std::chrono::steady_clock::now();
    const double t0 = params.start_temperature.value_or(0.05 * instance.total_weight_double());
    const bool local = params.mode == NeighborhoodMode::local;
    const auto n = static_cast<std::uint64_t>(instance.node_count());
    const double tol = value_tolerance(instance);

    PortalState<double> state(instance);
    state.assign(init);
    std::vector<char> portal(instance.node_count(), 0);
    for (NodeId p : init) portal[static_cast<std::size_t>(p)] = 1;
    CoverCounts cover(instance);
    if (local) cover.reset(init);

    SaRun best{{state.portals().begin(), state.portals().end()}, state.value()};
    double temperature = t0;
    std::int64_t unchanged = 0;
    std::int64_t since_best = 0;
    std::vector<Move> all_moves;

    auto valid = [&](NodeId p, NodeId q) {
        if (portal[static_cast<std::size_t>(q)]) return false;
        return !local || cover.is_local_target(p, q);
    };

    // Uniform over valid (portal, target) pairs: rejection first, enumeration
    // when the valid pairs are too sparse for rejection to find one quickly.
    auto sample = [&]() -> std::optional<Move> {
        const std::size_t k = state.size();
        if (k == 0 || n == 0) return std::nullopt;
        for (int attempt = 0; attempt < 256; ++attempt) {
            NodeId p = state.portals()[uniform_below(rng, k)];
            auto q = static_cast<NodeId>(uniform_below(rng, n));
            if (valid(p, q)) return Move{p, q};
        }
        all_moves.clear();
        std::vector<NodeId> current(state.portals().begin(), state.portals().end());
        for (NodeId p : current)
            for (NodeId q = 0; q < static_cast<NodeId>(n); ++q)
                if (valid(p, q)) all_moves.push_back(Move{p, q});
        if (all_moves.empty()) return std::nullopt;
        return all_moves[uniform_below(rng, all_moves.size())];
    };

    for (std::int64_t iteration = 0;; ++iteration) {
        const auto& t = params.termination;
        if (t.max_iterations && iteration >= *t.max_iterations) break;
        if (t.max_stagnation && since_best >= *t.max_stagnation) break;
        if (t.max_wall_seconds && (iteration & 255) == 0 &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >= *t.max_wall_seconds)
            break;

        bool changed = false;
        if (auto move = sample()) {
            const double current = state.value();
            state.remove(move->from);
            const double candidate = state.value() + state.gain_if_added(move->to);
            const double u = uniform01(rng);
            if (candidate >= current || u < boltzmann(current, candidate, temperature)) {
                state.add(move->to);
                portal[static_cast<std::size_t>(move->from)] = 0;
                portal[static_cast<std::size_t>(move->to)] = 1;
                if (local) {
                    cover.apply(move->from, -1);
                    cover.apply(move->to, +1);
                }
                changed = true;
            } else {
                state.add(move->from);
            }
        }

        if (state.value() > best.value + tol) {
            best.portals.assign(state.portals().begin(), state.portals().end());
            best.value = state.value();
            since_best = 0;
        } else {
            ++since_best;
        }
        unchanged = changed ? 0 : unchanged + 1;
        temperature *= params.cooling_factor;
        if (unchanged >= params.reheat_after) {
            temperature = t0;
            unchanged = 0;
        }
    }
    return best;
}

}  // namespace detail

/// Simulated annealing from `init` (greedy when unset). Each worker runs an
/// independent chain on its own random stream; the best chain wins, ties to the
/// lowest worker index.
inline Solution sa(const Instance& instance, int k, const SaParams& params = {},
                   const std::optional<Solution>& init = std::nullopt) {
    if (k < 2) throw error(errc::invalid_k, "k must be at least 2");
    validate(params);
    if (instance.trajectory_count() == 0) return init ? *init : Solution{};
    const std::vector<NodeId> start =
        init ? init->portals : greedy_portals(instance, k, trajectories_by_weight(instance).front());

    std::vector<detail::SaRun> runs(static_cast<std::size_t>(params.workers));
    auto work = [&](int w) {
        runs[static_cast<std::size_t>(w)] =
            detail::anneal(instance, start, params, make_rng(params.seed, {static_cast<std::uint64_t>(w)}));
    };
    if (params.workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < params.workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    Solution best = make_solution(instance, runs.front().portals);
    for (std::size_t w = 1; w < runs.size(); ++w) {
        Solution s = make_solution(instance, runs[w].portals);
        if (s.value > best.value) best = std::move(s);
    }
    return best;
}

}  // namespace tcp
