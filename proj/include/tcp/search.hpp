#pragma once

#include <algorithm>
#include <atomic>
#include <mutex>
#include <span>
#include <vector>

#include "tcp/instance.hpp"

namespace tcp::detail {

/// Exact value of a small portal set without touching every trajectory.
inline Rational evaluate_sparse(const Instance& instance, std::span<const NodeId> portals) {
    std::vector<Incidence> incs;
    for (NodeId p : portals) {
        auto list = instance.incidences(p);
        incs.insert(incs.end(), list.begin(), list.end());
    }
    std::sort(incs.begin(), incs.end(),
              [](const Incidence& a, const Incidence& b) { return a.traj != b.traj ? a.traj < b.traj : a.pos < b.pos; });
    Rational total(0);
    for (std::size_t i = 0; i < incs.size();) {
        std::size_t j = i;
        while (j + 1 < incs.size() && incs[j + 1].traj == incs[i].traj) ++j;
        if (incs[j].pos > incs[i].pos) {
            auto prefix = instance.prefix_exact(incs[i].traj);
            total += prefix[static_cast<std::size_t>(incs[j].pos)] - prefix[static_cast<std::size_t>(incs[i].pos)];
        }
        i = j + 1;
    }
    return total;
}

/// Best portal set found so far, shared between workers. Double values steer
/// the search; anything within `margin` of the incumbent is decided exactly.
class Incumbent {
 public:
    explicit Incumbent(const Instance& instance)
        : instance_(&instance), margin_(1e-9 * (instance.total_weight_double() + 1.0)), approx_(0.0) {}

    [[nodiscard]] double margin() const { return margin_; }
    [[nodiscard]] double approx() const { return approx_.load(std::memory_order_relaxed); }

    /// Accepts the set only if it is strictly better in exact arithmetic.
    bool offer(std::span<const NodeId> portals, double value_d) {
        if (value_d < approx() - margin_) return false;
        Rational exact = evaluate_sparse(*instance_, portals);
        std::lock_guard lock(mutex_);
        if (has_ && !(exact > value_)) return false;
        value_ = std::move(exact);
        portals_.assign(portals.begin(), portals.end());
        std::sort(portals_.begin(), portals_.end());
        has_ = true;
        approx_.store(value_.get_d(), std::memory_order_relaxed);
        return true;
    }

    /// True when a subtree whose bound is `bound_d` cannot contain anything
    /// strictly better. `exact_bound` is only called in the ambiguous zone.
    template <class ExactBound>
    bool dominates(double bound_d, ExactBound&& exact_bound) {
        const double inc = approx();
        if (bound_d < inc - margin_) return true;
        if (bound_d > inc + margin_) return false;
        Rational bound = exact_bound();
        std::lock_guard lock(mutex_);
        return has_ && !(bound > value_);
    }

    [[nodiscard]] Solution solution(bool proven) const {
        std::lock_guard lock(mutex_);
        return Solution{portals_, value_, proven};
    }

 private:
    const Instance* instance_;
    double margin_;
    std::atomic<double> approx_;
    mutable std::mutex mutex_;
    bool has_ = false;
    Rational value_{0};
    std::vector<NodeId> portals_;
};

}  // namespace tcp::detail
