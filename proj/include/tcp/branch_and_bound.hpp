/**
 * Depth-first branch and bound over include/exclude decisions.
 *
 * Bound for a node with chosen set S, undecided candidates U and r free slots:
 *
 *     min( f(S u U),  f(S) + sum of the r largest u(q | S) over q in U )
 *
 * where u(q | S) adds, over the trajectories through q, the distance from q to
 * the current portal span when the trajectory already holds a portal, and half
 * of q's largest distance to another undecided node on it otherwise. Both terms
 * are upper bounds on f(S u Q) for any Q subset of U with |Q| <= r.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "tcp/greedy.hpp"
#include "tcp/local_search.hpp"
#include "tcp/portal_state.hpp"
#include "tcp/search.hpp"

namespace tcp {

struct BranchAndBoundOptions {
    double time_limit_seconds = std::numeric_limits<double>::infinity();
    int threads = 1;
    /// Starting incumbent; greedy followed by local search when unset.
    std::optional<std::vector<NodeId>> initial;
};

struct BranchAndBoundStats {
    std::uint64_t nodes = 0;
    std::uint64_t pruned = 0;
    std::size_t candidates = 0;
};

namespace detail {

/// Nodes worth branching on, best first. Nodes on no trajectory never help, and
/// a node interior to exactly one trajectory is dominated by that trajectory's
/// endpoints.
inline std::vector<NodeId> bnb_candidates(const Instance& instance) {
    std::vector<std::pair<double, NodeId>> keyed;
    for (NodeId v = 0; v < static_cast<NodeId>(instance.node_count()); ++v) {
        auto incs = instance.incidences(v);
        if (incs.empty()) continue;
        if (incs.size() == 1) {
            const auto last = static_cast<std::int32_t>(instance.trajectory(incs[0].traj).nodes.size()) - 1;
            if (incs[0].pos != 0 && incs[0].pos != last) continue;
        }
        double potential = 0.0;
        for (const Incidence& inc : incs) {
            auto prefix = instance.prefix_double(inc.traj);
            const double at = prefix[static_cast<std::size_t>(inc.pos)];
            potential += std::max(at, prefix.back() - at) / 2;
        }
        keyed.emplace_back(potential, v);
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<NodeId> out;
    out.reserve(keyed.size());
    for (const auto& [potential, v] : keyed) out.push_back(v);
    return out;
}

template <class T>
class BoundScratch {
 public:
    explicit BoundScratch(const Instance& instance)
        : min_(instance.trajectory_count(), std::numeric_limits<std::int32_t>::max()),
          max_(instance.trajectory_count(), -1) {}

    T compute(const PortalState<T>& state, std::span<const NodeId> undecided, int r) {
        const Instance& instance = state.instance();
        touched_.clear();
        for (NodeId u : undecided)
            for (const Incidence& inc : instance.incidences(u)) {
                auto t = static_cast<std::size_t>(inc.traj);
                if (max_[t] < 0) touched_.push_back(inc.traj);
                min_[t] = std::min(min_[t], inc.pos);
                max_[t] = std::max(max_[t], inc.pos);
            }

        T all = state.value();
        for (TrajId tid : touched_) {
            auto t = static_cast<std::size_t>(tid);
            auto prefix = instance.template prefix<T>(tid);
            std::int32_t lo = min_[t], hi = max_[t];
            if (state.count_on(tid) > 0) {
                lo = std::min(lo, state.lo_on(tid));
                hi = std::max(hi, state.hi_on(tid));
                all -= prefix[static_cast<std::size_t>(state.hi_on(tid))] - prefix[static_cast<std::size_t>(state.lo_on(tid))];
            }
            if (hi > lo) all += prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo)];
        }

        gains_.clear();
        for (NodeId u : undecided) {
            T g(0);
            for (const Incidence& inc : instance.incidences(u)) {
                auto t = static_cast<std::size_t>(inc.traj);
                auto prefix = instance.template prefix<T>(inc.traj);
                const auto& at = prefix[static_cast<std::size_t>(inc.pos)];
                if (state.count_on(inc.traj) > 0) {
                    if (inc.pos < state.lo_on(inc.traj))
                        g += prefix[static_cast<std::size_t>(state.lo_on(inc.traj))] - at;
                    else if (inc.pos > state.hi_on(inc.traj))
                        g += at - prefix[static_cast<std::size_t>(state.hi_on(inc.traj))];
                } else {
                    T left = at - prefix[static_cast<std::size_t>(min_[t])];
                    T right = prefix[static_cast<std::size_t>(max_[t])] - at;
                    g += (left > right ? left : right) / 2;
                }
            }
            gains_.push_back(std::move(g));
        }
        for (TrajId tid : touched_) {
            min_[static_cast<std::size_t>(tid)] = std::numeric_limits<std::int32_t>::max();
            max_[static_cast<std::size_t>(tid)] = -1;
        }

        const auto take = std::min(gains_.size(), static_cast<std::size_t>(r));
        std::nth_element(gains_.begin(), gains_.begin() + static_cast<std::ptrdiff_t>(take), gains_.end(),
                         [](const T& a, const T& b) { return a > b; });
        T modular = state.value();
        for (std::size_t i = 0; i < take; ++i) modular += gains_[i];
        return modular < all ? modular : all;
    }

 private:
    std::vector<std::int32_t> min_;
    std::vector<std::int32_t> max_;
    std::vector<TrajId> touched_;
    std::vector<T> gains_;
};

class BnbWorker {
 public:
    BnbWorker(const Instance& instance, int k, const std::vector<NodeId>& candidates, Incumbent& incumbent,
              std::chrono::steady_clock::time_point deadline, std::atomic<bool>& timed_out)
        : instance_(instance),
          k_(k),
          cands_(candidates),
          incumbent_(incumbent),
          deadline_(deadline),
          timed_out_(timed_out),
          state_(instance),
          exact_(instance),
          scratch_(instance),
          exact_scratch_(instance) {}

    /// Searches the subtree where the decisions on cands[0..start) are fixed and
    /// `chosen` lists the included ones.
    void run(const std::vector<NodeId>& chosen, std::size_t start) {
        for (NodeId v : chosen) state_.push(v);
        dfs(start);
        for (std::size_t i = 0; i < chosen.size(); ++i) state_.pop();
    }

    BranchAndBoundStats stats;

 private:
    void dfs(std::size_t idx) {
        if (timed_out_.load(std::memory_order_relaxed)) return;
        if ((++stats.nodes & 1023) == 0 && std::chrono::steady_clock::now() >= deadline_) {
            timed_out_.store(true);
            return;
        }
        incumbent_.offer(state_.portals(), state_.value());
        const int r = k_ - static_cast<int>(state_.size());
        const std::size_t left = cands_.size() - idx;
        if (r <= 0 || left == 0) return;
        std::span<const NodeId> undecided(cands_.data() + idx, left);

        if (static_cast<std::size_t>(r) >= left) {
            for (NodeId v : undecided) state_.push(v);
            incumbent_.offer(state_.portals(), state_.value());
            for (std::size_t i = 0; i < left; ++i) state_.pop();
            return;
        }

        const double bound = scratch_.compute(state_, undecided, r);
        if (incumbent_.dominates(bound, [&] {
                exact_.assign(state_.portals());
                return exact_scratch_.compute(exact_, undecided, r);
            })) {
            ++stats.pruned;
            return;
        }

        if (r == 1) {
            double best = -1.0;
            for (NodeId v : undecided) best = std::max(best, state_.gain_if_added(v));
            for (NodeId v : undecided)
                if (state_.gain_if_added(v) >= best - incumbent_.margin()) {
                    state_.push(v);
                    incumbent_.offer(state_.portals(), state_.value());
                    state_.pop();
                }
            return;
        }

        state_.push(cands_[idx]);
        dfs(idx + 1);
        state_.pop();
        dfs(idx + 1);
    }

    const Instance& instance_;
    int k_;
    const std::vector<NodeId>& cands_;
    Incumbent& incumbent_;
    std::chrono::steady_clock::time_point deadline_;
    std::atomic<bool>& timed_out_;
    PortalState<double> state_;
    PortalState<Rational> exact_;
    BoundScratch<double> scratch_;
    BoundScratch<Rational> exact_scratch_;
};

}  // namespace detail

/// Exact maximization with a time limit. proven_optimal is false when the
/// search was cut short; the best set found is returned either way.
inline Solution solve_branch_and_bound(const Instance& instance, int k, const BranchAndBoundOptions& options = {},
                                       BranchAndBoundStats* stats_out = nullptr) {
    if (k < 2) throw error(errc::invalid_k, "k must be at least 2");
    const auto start = std::chrono::steady_clock::now();
    auto deadline = std::chrono::steady_clock::time_point::max();
    if (std::isfinite(options.time_limit_seconds))
        deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                               std::chrono::duration<double>(options.time_limit_seconds));

    detail::Incumbent incumbent(instance);
    incumbent.offer({}, 0.0);
    if (instance.trajectory_count() == 0) return incumbent.solution(true);
    if (options.initial) {
        std::vector<NodeId> init = *options.initial;
        std::sort(init.begin(), init.end());
        init.erase(std::unique(init.begin(), init.end()), init.end());
        if (static_cast<int>(init.size()) > k) throw error(errc::invalid_input, "initial solution exceeds k");
        detail::check_portals(instance, init);
        incumbent.offer(init, evaluate_double(instance, init));
    } else {
        Solution warm = ils(instance, k, greedy(instance, k));
        incumbent.offer(warm.portals, warm.value.get_d());
    }

    const std::vector<NodeId> cands = detail::bnb_candidates(instance);
    std::atomic<bool> timed_out{false};
    BranchAndBoundStats total;
    total.candidates = cands.size();

    const int threads = std::max(1, options.threads);
    if (threads == 1) {
        detail::BnbWorker worker(instance, k, cands, incumbent, deadline, timed_out);
        worker.run({}, 0);
        total.nodes = worker.stats.nodes;
        total.pruned = worker.stats.pruned;
    } else {
        // Split on the first few candidates; workers pull subtrees in order.
        std::size_t depth = 0;
        while (depth < cands.size() && (std::size_t{1} << depth) < static_cast<std::size_t>(threads) * 8) ++depth;
        std::vector<std::vector<NodeId>> jobs;
        for (std::size_t mask = 0; mask < (std::size_t{1} << depth); ++mask) {
            std::vector<NodeId> chosen;
            for (std::size_t i = 0; i < depth; ++i)
                if (mask & (std::size_t{1} << (depth - 1 - i))) chosen.push_back(cands[i]);
            if (static_cast<int>(chosen.size()) <= k) jobs.push_back(std::move(chosen));
        }
        std::atomic<std::size_t> next{0};
        std::mutex stats_mutex;
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                detail::BnbWorker worker(instance, k, cands, incumbent, deadline, timed_out);
                for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) worker.run(jobs[j], depth);
                std::lock_guard lock(stats_mutex);
                total.nodes += worker.stats.nodes;
                total.pruned += worker.stats.pruned;
            });
        for (auto& t : pool) t.join();
    }
    if (stats_out) *stats_out = total;
    return incumbent.solution(!timed_out.load());
}

}  // namespace tcp
