#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "tcp/instance.hpp"

namespace tcp {

/// Incremental captured-weight evaluator for a changing portal set.
///
/// T is the value type: double for search guidance, Rational for exact checks.
/// Keeps, per trajectory, the number of portals on it and their extreme
/// positions, so adding a node costs O(incidences) and removing one costs
/// O(incidences * portals) in the worst case.
template <class T>
class PortalState {
 public:
    explicit PortalState(const Instance& instance)
        : instance_(&instance),
          traj_(instance.trajectory_count()),
          slot_(instance.node_count(), -1),
          value_(0) {}

    [[nodiscard]] const Instance& instance() const { return *instance_; }
    [[nodiscard]] const T& value() const { return value_; }
    [[nodiscard]] std::span<const NodeId> portals() const { return portals_; }
    [[nodiscard]] std::size_t size() const { return portals_.size(); }
    [[nodiscard]] bool contains(NodeId v) const { return slot_[static_cast<std::size_t>(v)] >= 0; }

    /// Number of portals lying on trajectory t.
    [[nodiscard]] std::int32_t count_on(TrajId t) const { return traj_[static_cast<std::size_t>(t)].count; }
    [[nodiscard]] std::int32_t lo_on(TrajId t) const { return traj_[static_cast<std::size_t>(t)].lo; }
    [[nodiscard]] std::int32_t hi_on(TrajId t) const { return traj_[static_cast<std::size_t>(t)].hi; }

    void clear() {
        for (NodeId p : portals_) {
            for (const Incidence& inc : instance_->incidences(p)) traj_[static_cast<std::size_t>(inc.traj)] = {};
            slot_[static_cast<std::size_t>(p)] = -1;
        }
        portals_.clear();
        value_ = T(0);
        undo_log_.clear();
        frames_.clear();
    }

    void assign(std::span<const NodeId> portals) {
        clear();
        for (NodeId p : portals)
            if (!contains(p)) add(p);
    }

    /// Increase of value() if v were added. v must not be a portal.
    [[nodiscard]] T gain_if_added(NodeId v) const {
        T gain(0);
        for (const Incidence& inc : instance_->incidences(v)) {
            const TrajState& s = traj_[static_cast<std::size_t>(inc.traj)];
            if (s.count == 0) continue;
            auto prefix = instance_->template prefix<T>(inc.traj);
            if (inc.pos < s.lo)
                gain += prefix[static_cast<std::size_t>(s.lo)] - prefix[static_cast<std::size_t>(inc.pos)];
            else if (inc.pos > s.hi)
                gain += prefix[static_cast<std::size_t>(inc.pos)] - prefix[static_cast<std::size_t>(s.hi)];
        }
        return gain;
    }

    void add(NodeId v) {
        for (const Incidence& inc : instance_->incidences(v)) {
            TrajState& s = traj_[static_cast<std::size_t>(inc.traj)];
            if (s.count > 0) {
                auto prefix = instance_->template prefix<T>(inc.traj);
                if (inc.pos < s.lo)
                    value_ += prefix[static_cast<std::size_t>(s.lo)] - prefix[static_cast<std::size_t>(inc.pos)];
                else if (inc.pos > s.hi)
                    value_ += prefix[static_cast<std::size_t>(inc.pos)] - prefix[static_cast<std::size_t>(s.hi)];
            }
            s.lo = std::min(s.lo, inc.pos);
            s.hi = std::max(s.hi, inc.pos);
            ++s.count;
        }
        slot_[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(portals_.size());
        portals_.push_back(v);
    }

    void remove(NodeId v) {
        const auto slot = slot_[static_cast<std::size_t>(v)];
        slot_[static_cast<std::size_t>(v)] = -1;
        const NodeId last = portals_.back();
        portals_[static_cast<std::size_t>(slot)] = last;
        if (last != v) slot_[static_cast<std::size_t>(last)] = slot;
        portals_.pop_back();

        for (const Incidence& inc : instance_->incidences(v)) {
            TrajState& s = traj_[static_cast<std::size_t>(inc.traj)];
            auto prefix = instance_->template prefix<T>(inc.traj);
            const std::int32_t old_lo = s.lo;
            const std::int32_t old_hi = s.hi;
            --s.count;
            if (s.count == 0) {
                s = {};
                continue;
            }
            if (inc.pos != old_lo && inc.pos != old_hi) continue;
            s.lo = std::numeric_limits<std::int32_t>::max();
            s.hi = -1;
            for (NodeId p : portals_)
                for (const Incidence& other : instance_->incidences(p))
                    if (other.traj == inc.traj) {
                        s.lo = std::min(s.lo, other.pos);
                        s.hi = std::max(s.hi, other.pos);
                    }
            if (s.lo > old_lo)
                value_ -= prefix[static_cast<std::size_t>(s.lo)] - prefix[static_cast<std::size_t>(old_lo)];
            if (s.hi < old_hi)
                value_ -= prefix[static_cast<std::size_t>(old_hi)] - prefix[static_cast<std::size_t>(s.hi)];
        }
    }

    /// add() that can be reverted with pop(); pushes and pops must nest.
    void push(NodeId v) {
        frames_.push_back(Frame{undo_log_.size(), value_});
        for (const Incidence& inc : instance_->incidences(v))
            undo_log_.emplace_back(inc.traj, traj_[static_cast<std::size_t>(inc.traj)]);
        add(v);
    }

    void pop() {
        const Frame frame = frames_.back();
        frames_.pop_back();
        while (undo_log_.size() > frame.log_size) {
            auto& [t, state] = undo_log_.back();
            traj_[static_cast<std::size_t>(t)] = state;
            undo_log_.pop_back();
        }
        const NodeId v = portals_.back();
        slot_[static_cast<std::size_t>(v)] = -1;
        portals_.pop_back();
        value_ = frame.value;
    }

 private:
    struct TrajState {
        std::int32_t lo = std::numeric_limits<std::int32_t>::max();
        std::int32_t hi = -1;
        std::int32_t count = 0;
    };
    struct Frame {
        std::size_t log_size;
        T value;
    };

    const Instance* instance_;
    std::vector<TrajState> traj_;
    std::vector<std::int32_t> slot_;
    std::vector<NodeId> portals_;
    T value_;
    std::vector<std::pair<TrajId, TrajState>> undo_log_;
    std::vector<Frame> frames_;
};

}  // namespace tcp
