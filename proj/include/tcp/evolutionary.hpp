/**
 * Evolutionary algorithm: randomized-greedy initial population, fitness-based
 * parent selection, uniform crossover on the union of the parents' portals,
 * mutation by local search or a short annealing run, and elitist survival.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <thread>
#include <vector>

#include "tcp/annealing.hpp"
#include "tcp/greedy.hpp"
#include "tcp/local_search.hpp"
#include "tcp/random.hpp"

namespace tcp {

enum class Mutation { ils, sa };

struct EaParams {
    int initial_population = 100;
    int population = 50;
    int offspring_per_round = 25;
    Mutation mutation = Mutation::ils;
    double wall_time_limit_seconds = 900.0;
    int stagnation_rounds = 5;
    std::optional<int> max_rounds;
    std::uint64_t seed = 0;
    int threads = 1;
    NeighborhoodMode mode = NeighborhoodMode::local;
    /// Base annealing settings; the mutation run uses 1/50 of its iteration budget.
    SaParams sa;
    /// Called after each round with (round, best value).
    std::function<void(int, double)> observer;
};

inline void validate(const EaParams& p) {
    if (p.population < 2 || p.initial_population < p.population)
        throw error(errc::invalid_input, "need initial_population >= population >= 2");
    if (p.offspring_per_round < 1) throw error(errc::invalid_input, "offspring_per_round must be positive");
    if (p.stagnation_rounds < 1) throw error(errc::invalid_input, "stagnation_rounds must be positive");
    if (p.threads < 1) throw error(errc::invalid_input, "threads must be positive");
}

namespace detail {

struct Individual {
    std::vector<NodeId> portals;  // sorted
    double fitness = 0.0;
};

inline void sort_population(std::vector<Individual>& pop) {
    std::sort(pop.begin(), pop.end(), [](const Individual& a, const Individual& b) {
        return a.fitness != b.fitness ? a.fitness > b.fitness : a.portals < b.portals;
    });
    pop.erase(std::unique(pop.begin(), pop.end(),
                          [](const Individual& a, const Individual& b) { return a.portals == b.portals; }),
              pop.end());
}

/// Selection weights f - f_min normalized, mixed with 1% uniform mass.
inline std::vector<double> selection_weights(const std::vector<Individual>& pop) {
    double fmin = pop.front().fitness;
    for (const auto& ind : pop) fmin = std::min(fmin, ind.fitness);
    double total = 0.0;
    for (const auto& ind : pop) total += ind.fitness - fmin;
    std::vector<double> w(pop.size());
    const double uniform = 1.0 / static_cast<double>(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i)
        w[i] = total > 0 ? 0.99 * (pop[i].fitness - fmin) / total + 0.01 * uniform : uniform;
    return w;
}

inline std::size_t draw(const std::vector<double>& weights, Rng& rng) {
    double u = uniform01(rng);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (u < weights[i]) return i;
        u -= weights[i];
    }
    return weights.size() - 1;
}

inline std::vector<NodeId> crossover(const std::vector<NodeId>& a, const std::vector<NodeId>& b, int k,
                                     std::size_t node_count, Rng& rng) {
    std::vector<NodeId> pool;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(pool));
    const auto take = std::min(pool.size(), static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < take; ++i) std::swap(pool[i], pool[i + uniform_below(rng, pool.size() - i)]);
    pool.resize(take);
    std::vector<char> used(node_count, 0);
    for (NodeId v : pool) used[static_cast<std::size_t>(v)] = 1;
    while (pool.size() < static_cast<std::size_t>(k) && pool.size() < node_count) {
        auto v = static_cast<NodeId>(uniform_below(rng, node_count));
        if (used[static_cast<std::size_t>(v)]) continue;
        used[static_cast<std::size_t>(v)] = 1;
        pool.push_back(v);
    }
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace detail

inline Solution ea(const Instance& instance, int k, const EaParams& params = {}) {
    if (k < 2) throw error(errc::invalid_k, "k must be at least 2");
    validate(params);
    if (instance.trajectory_count() == 0) return Solution{};
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

    std::vector<TrajId> startable;
    for (const Trajectory& t : instance.trajectories())
        if (instance.trajectory_weight(t.id) > 0) startable.push_back(t.id);
    if (startable.empty()) startable.push_back(0);

    std::vector<detail::Individual> pop;
    {
        Rng rng = make_rng(params.seed, {0xe0});
        for (int i = 0; i < params.initial_population; ++i) {
            TrajId t = startable[uniform_below(rng, startable.size())];
            auto portals = greedy_portals(instance, k, t);
            std::sort(portals.begin(), portals.end());
            const double f = evaluate(instance, portals).get_d();
            pop.push_back({std::move(portals), f});
        }
        detail::sort_population(pop);
        if (pop.size() > static_cast<std::size_t>(params.population)) pop.resize(static_cast<std::size_t>(params.population));
    }

    SaParams fast = params.sa;
    fast.workers = 1;
    fast.mode = params.mode;
    if (fast.termination.max_iterations) fast.termination.max_iterations = std::max<std::int64_t>(1, *fast.termination.max_iterations / 50);
    IlsOptions ils_options;
    ils_options.mode = params.mode;

    const double tol = value_tolerance(instance);
    double best = pop.front().fitness;
    int stagnant = 0;
    for (int round = 1;; ++round) {
        if (params.max_rounds && round > *params.max_rounds) break;
        if (elapsed() >= params.wall_time_limit_seconds) break;

        Rng rng = make_rng(params.seed, {0xe1, static_cast<std::uint64_t>(round)});
        const auto weights = detail::selection_weights(pop);
        std::vector<detail::Individual> children(static_cast<std::size_t>(params.offspring_per_round));
        for (auto& child : children) {
            const std::size_t a = detail::draw(weights, rng);
            std::size_t b = a;
            for (int tries = 0; b == a && pop.size() > 1 && tries < 64; ++tries) b = detail::draw(weights, rng);
            child.portals = detail::crossover(pop[a].portals, pop[b].portals, k, instance.node_count(), rng);
        }

        auto mutate = [&](std::size_t i) {
            auto& child = children[i];
            Solution seed_solution = make_solution(instance, child.portals);
            Solution out;
            if (params.mutation == Mutation::ils) {
                out = ils(instance, k, seed_solution, ils_options);
            } else {
                SaParams p = fast;
                p.seed = make_rng(params.seed, {0xe2, static_cast<std::uint64_t>(round), i})();
                out = sa(instance, k, p, seed_solution);
            }
            child.portals = std::move(out.portals);
            child.fitness = out.value.get_d();
        };
        if (params.threads == 1) {
            for (std::size_t i = 0; i < children.size(); ++i) mutate(i);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            for (int w = 0; w < params.threads; ++w)
                pool.emplace_back([&] {
                    for (std::size_t i; (i = next.fetch_add(1)) < children.size();) mutate(i);
                });
            for (auto& t : pool) t.join();
        }

        pop.insert(pop.end(), std::make_move_iterator(children.begin()), std::make_move_iterator(children.end()));
        detail::sort_population(pop);
        if (pop.size() > static_cast<std::size_t>(params.population)) pop.resize(static_cast<std::size_t>(params.population));
        if (params.observer) params.observer(round, pop.front().fitness);

        if (pop.front().fitness > best + tol) {
            best = pop.front().fitness;
            stagnant = 0;
        } else if (++stagnant >= params.stagnation_rounds) {
            break;
        }
    }
    return make_solution(instance, pop.front().portals);
}

}  // namespace tcp
