/**
 * Exact dynamic program for trajectory capture on a line.
 *
 * With positions x_0 < ... < x_{m-1} and gain(i, j) the weight captured between
 * consecutive portals at x_i and x_j, let W_c(i) be the best weight captured by c
 * portals whose leftmost one sits at x_i:
 *
 *     W_1(i) = 0,   W_c(i) = max_{j > i} W_{c-1}(j) + gain(i, j).
 *
 * For plain intervals gain(i, j) = (x_j - x_i) * #{intervals containing [x_i, x_j]},
 * and the count is updated incrementally while j sweeps right, giving O(m^2 k).
 */
#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcp/error.hpp"
#include "tcp/instance.hpp"
#include "tcp/rational.hpp"

namespace tcp {

/// Upper-triangular gain table: gain[i][j - i - 1] for i < j.
using GainTable = std::vector<std::vector<Rational>>;

class LineDp {
 public:
    LineDp(const GainTable& gain, int max_portals) : m_(static_cast<int>(gain.size())) {
        max_count_ = std::min(max_portals, m_);
        table_.assign(static_cast<std::size_t>(max_count_ + 1), {});
        next_.assign(static_cast<std::size_t>(max_count_ + 1), {});
        best_.assign(static_cast<std::size_t>(max_count_ + 1), Rational(0));
        best_start_.assign(static_cast<std::size_t>(max_count_ + 1), -1);
        if (max_count_ < 1) return;
        table_[1].assign(static_cast<std::size_t>(m_), Rational(0));
        next_[1].assign(static_cast<std::size_t>(m_), -1);
        best_start_[1] = 0;
        for (int c = 2; c <= max_count_; ++c) {
            auto& row = table_[static_cast<std::size_t>(c)];
            auto& nxt = next_[static_cast<std::size_t>(c)];
            const auto& prev = table_[static_cast<std::size_t>(c - 1)];
            row.assign(static_cast<std::size_t>(m_), Rational(0));
            nxt.assign(static_cast<std::size_t>(m_), -1);
            // Needs c positions from i onward: i <= m - c.
            for (int i = 0; i + c <= m_; ++i) {
                std::optional<Rational> best;
                int arg = -1;
                for (int j = i + 1; j + (c - 1) <= m_; ++j) {
                    Rational candidate = prev[static_cast<std::size_t>(j)] +
                                         gain[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - i - 1)];
                    if (!best || candidate > *best) {
                        best = std::move(candidate);
                        arg = j;
                    }
                }
                row[static_cast<std::size_t>(i)] = *best;
                nxt[static_cast<std::size_t>(i)] = arg;
                if (best_start_[static_cast<std::size_t>(c)] < 0 || *best > best_[static_cast<std::size_t>(c)]) {
                    best_[static_cast<std::size_t>(c)] = *best;
                    best_start_[static_cast<std::size_t>(c)] = i;
                }
            }
        }
    }

    [[nodiscard]] int max_count() const { return max_count_; }

    /// Best value with at most c portals.
    [[nodiscard]] const Rational& best(int c) const {
        return best_[static_cast<std::size_t>(std::clamp(c, 0, max_count_))];
    }

    /// Position indices of an optimal placement with min(c, m) portals.
    [[nodiscard]] std::vector<int> positions(int c) const {
        c = std::clamp(c, 0, max_count_);
        std::vector<int> out;
        if (c == 0) return out;
        int i = best_start_[static_cast<std::size_t>(c)];
        for (int level = c; level >= 1; --level) {
            out.push_back(i);
            i = next_[static_cast<std::size_t>(level)][static_cast<std::size_t>(i)];
        }
        return out;
    }

 private:
    int m_;
    int max_count_ = 0;
    std::vector<std::vector<Rational>> table_;
    std::vector<std::vector<int>> next_;
    std::vector<Rational> best_;
    std::vector<int> best_start_;
};

struct LineSolution {
    std::vector<Rational> positions;
    Rational value{0};
    bool proven_optimal = true;
};

/// Optimal placement of up to k portals on a line capturing interval lengths;
/// candidate positions are the interval endpoints.
inline LineSolution solve_1d_dp(std::span<const Interval1D> intervals, int k) {
    if (k < 2) throw error(errc::invalid_k, "k must be at least 2");
    if (intervals.empty()) throw error(errc::invalid_input, "no intervals");
    std::vector<Rational> coords;
    coords.reserve(intervals.size() * 2);
    for (const auto& iv : intervals) {
        if (!(iv.a < iv.b)) throw error(errc::invalid_input, "interval with a >= b");
        coords.push_back(iv.a);
        coords.push_back(iv.b);
    }
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    const int m = static_cast<int>(coords.size());
    auto index_of = [&](const Rational& x) {
        return static_cast<int>(std::lower_bound(coords.begin(), coords.end(), x) - coords.begin());
    };
    std::vector<std::pair<int, int>> idx;
    idx.reserve(intervals.size());
    for (const auto& iv : intervals) idx.emplace_back(index_of(iv.a), index_of(iv.b));

    GainTable gain(static_cast<std::size_t>(m));
    std::vector<long> ends_at(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        std::fill(ends_at.begin(), ends_at.end(), 0);
        long active = 0;  // intervals with a <= x_i and b > x_i
        for (const auto& [a, b] : idx)
            if (a <= i && b > i) {
                ++ends_at[static_cast<std::size_t>(b)];
                ++active;
            }
        auto& row = gain[static_cast<std::size_t>(i)];
        row.reserve(static_cast<std::size_t>(m - i - 1));
        for (int j = i + 1; j < m; ++j) {
            row.push_back(Rational(active) * (coords[static_cast<std::size_t>(j)] - coords[static_cast<std::size_t>(i)]));
            active -= ends_at[static_cast<std::size_t>(j)];
        }
    }

    LineDp dp(gain, k);
    LineSolution out;
    for (int i : dp.positions(k)) out.positions.push_back(coords[static_cast<std::size_t>(i)]);
    out.value = dp.best(k);
    return out;
}

/// Intervals as a graph instance: nodes at the distinct endpoints on the x-axis,
/// edges between consecutive ones, one trajectory per interval.
inline Instance intervals_to_instance(std::span<const Interval1D> intervals, std::string name = "intervals") {
    if (intervals.empty()) throw error(errc::invalid_input, "no intervals");
    std::vector<Rational> coords;
    for (const auto& iv : intervals) {
        if (!(iv.a < iv.b)) throw error(errc::invalid_input, "interval with a >= b");
        coords.push_back(iv.a);
        coords.push_back(iv.b);
    }
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    auto index_of = [&](const Rational& x) {
        return static_cast<NodeId>(std::lower_bound(coords.begin(), coords.end(), x) - coords.begin());
    };
    std::vector<std::optional<Point>> points;
    for (const Rational& x : coords) points.push_back(Point{x, Rational(0)});
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < coords.size(); ++i)
        edges.push_back(Edge{static_cast<NodeId>(i - 1), static_cast<NodeId>(i), coords[i] - coords[i - 1]});
    std::vector<std::vector<NodeId>> trajectories;
    for (const auto& iv : intervals) {
        std::vector<NodeId> path;
        for (NodeId v = index_of(iv.a); v <= index_of(iv.b); ++v) path.push_back(v);
        trajectories.push_back(std::move(path));
    }
    return Instance(std::move(name), std::move(points), std::move(edges), std::move(trajectories), {},
                    {{"generator", "1d"}});
}

}  // namespace tcp
