#pragma once

#include <cstdint>
#include <thread>
#include <vector>

#include "tcp/error.hpp"
#include "tcp/instance.hpp"
#include "tcp/portal_state.hpp"
#include "tcp/search.hpp"

namespace tcp {

struct BruteForceOptions {
    std::uint64_t max_subsets = 10'000'000;
    int threads = 1;
};

/// Number of subsets of size <= k of an n-set, saturating at `cap + 1`.
inline std::uint64_t count_subsets(std::uint64_t n, int k, std::uint64_t cap) {
    std::uint64_t total = 0;
    std::uint64_t binom = 1;  // C(n, i)
    for (int i = 0; i <= k && static_cast<std::uint64_t>(i) <= n; ++i) {
        if (i > 0) {
            // C(n, i) = C(n, i-1) * (n - i + 1) / i, exact in 128 bits while below the cap.
            unsigned __int128 next = static_cast<unsigned __int128>(binom) * (n - static_cast<std::uint64_t>(i) + 1);
            next /= static_cast<unsigned>(i);
            if (next > cap) return cap + 1;
            binom = static_cast<std::uint64_t>(next);
        }
        total += binom;
        if (total > cap) return cap + 1;
    }
    return total;
}

namespace detail {

inline void brute_force_dfs(PortalState<double>& state, Incumbent& best, NodeId from, int k, NodeId n) {
    if (static_cast<int>(state.size()) >= k) return;
    for (NodeId v = from; v < n; ++v) {
        state.push(v);
        best.offer(state.portals(), state.value());
        brute_force_dfs(state, best, v + 1, k, n);
        state.pop();
    }
}

}  // namespace detail

/// Exhaustive search over all portal sets of size <= k. Among optimal sets the
/// lexicographically smallest sorted one is returned.
inline Solution solve_brute_force(const Instance& instance, int k, const BruteForceOptions& options = {}) {
    if (k < 0) throw error(errc::invalid_k, "k must be nonnegative");
    const auto n = static_cast<NodeId>(instance.node_count());
    if (count_subsets(static_cast<std::uint64_t>(n), k, options.max_subsets) > options.max_subsets)
        throw error(errc::too_large, "more than " + std::to_string(options.max_subsets) + " subsets to enumerate");

    const int workers = std::max(1, std::min(options.threads, static_cast<int>(n)));
    std::vector<Solution> results(static_cast<std::size_t>(workers));
    auto work = [&](int w) {
        detail::Incumbent best(instance);
        PortalState<double> state(instance);
        best.offer({}, 0.0);
        if (k > 0)
            for (NodeId first = w; first < n; first += workers) {
                state.push(first);
                best.offer(state.portals(), state.value());
                detail::brute_force_dfs(state, best, first + 1, k, n);
                state.pop();
            }
        results[static_cast<std::size_t>(w)] = best.solution(true);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    Solution out = results.front();
    for (const Solution& s : results)
        if (s.value > out.value || (s.value == out.value && s.portals < out.portals)) out = s;
    return out;
}

}  // namespace tcp
