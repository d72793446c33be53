/**
 * Integer program for trajectory capture, LP-file export and exact checking of
 * fractional assignments.
 *
 * For a trajectory (v_0, ..., v_l) with edge variables x_0..x_{l-1}:
 *
 *     forward   x_0 <= y_{v_0},      x_i     <= y_{v_i} + x_{i-1}   (0 < i < l)
 *     backward  x_{l-1} <= y_{v_l},  x_{i-1} <= y_{v_i} + x_i       (0 < i < l)
 *
 * plus the budget sum_v y_v <= k. An edge can only be captured when a portal
 * lies on each side of it along the trajectory.
 */
#pragma once

#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tcp/error.hpp"
#include "tcp/instance.hpp"
#include "tcp/rational.hpp"

namespace tcp {

struct XVar {
    TrajId traj;
    std::int32_t edge;  // index along the trajectory
    Rational weight;    // objective coefficient
};

/// Linear constraint sum(coef * var) <= rhs. Variables 0..n-1 are y_v, the
/// rest are x variables in model order.
struct LinearConstraint {
    std::string name;
    std::vector<std::pair<std::int64_t, int>> terms;
    Rational rhs;
};

struct IpModel {
    std::size_t node_count = 0;
    int budget = 0;
    std::vector<XVar> x;
    std::vector<LinearConstraint> constraints;
    std::map<std::pair<TrajId, std::int32_t>, std::int64_t> x_index;

    [[nodiscard]] std::size_t variable_count() const { return node_count + x.size(); }

    [[nodiscard]] std::string variable_name(std::int64_t var) const {
        if (var < static_cast<std::int64_t>(node_count)) return "y_v" + std::to_string(var);
        const XVar& v = x[static_cast<std::size_t>(var) - node_count];
        return "x_t" + std::to_string(v.traj) + "_e" + std::to_string(v.edge);
    }
};

inline IpModel build_ip(const Instance& instance, int k) {
    if (k < 0) throw error(errc::invalid_k, "k must be nonnegative");
    IpModel model;
    model.node_count = instance.node_count();
    model.budget = k;

    LinearConstraint budget{"budget", {}, Rational(k)};
    for (std::size_t v = 0; v < instance.node_count(); ++v) budget.terms.emplace_back(static_cast<std::int64_t>(v), 1);
    model.constraints.push_back(std::move(budget));

    for (const Trajectory& t : instance.trajectories()) {
        const auto l = static_cast<std::int32_t>(t.nodes.size()) - 1;
        const auto base = static_cast<std::int64_t>(model.node_count + model.x.size());
        for (std::int32_t i = 0; i < l; ++i) {
            model.x_index.emplace(std::pair{t.id, i}, base + i);
            model.x.push_back(XVar{t.id, i, instance.edge_weight(t.id, i)});
        }
        auto xv = [&](std::int32_t i) { return base + i; };
        auto yv = [&](std::int32_t i) { return static_cast<std::int64_t>(t.nodes[static_cast<std::size_t>(i)]); };
        const std::string tag = "_t" + std::to_string(t.id) + "_";
        model.constraints.push_back({"fwd" + tag + "0", {{xv(0), 1}, {yv(0), -1}}, Rational(0)});
        for (std::int32_t i = 1; i < l; ++i)
            model.constraints.push_back(
                {"fwd" + tag + std::to_string(i), {{xv(i), 1}, {yv(i), -1}, {xv(i - 1), -1}}, Rational(0)});
        model.constraints.push_back({"bwd" + tag + std::to_string(l), {{xv(l - 1), 1}, {yv(l), -1}}, Rational(0)});
        for (std::int32_t i = 1; i < l; ++i)
            model.constraints.push_back(
                {"bwd" + tag + std::to_string(i), {{xv(i - 1), 1}, {yv(i), -1}, {xv(i), -1}}, Rational(0)});
    }
    return model;
}

namespace detail {

class LineWrapper {
 public:
    LineWrapper(std::ostream& out, std::string head) : out_(out), width_(head.size()) { out_ << head; }

    void term(const std::string& text) {
        if (width_ + 1 + text.size() > 78 && width_ > 0) {
            out_ << "\n   ";
            width_ = 3;
        }
        out_ << ' ' << text;
        width_ += 1 + text.size();
    }

    void end() { out_ << '\n'; }

 private:
    std::ostream& out_;
    std::size_t width_;
};

inline std::string signed_term(const std::string& coef, const std::string& var, bool first) {
    if (coef.front() == '-') return (first ? "-" : "- ") + coef.substr(1) + " " + var;
    return (first ? "" : "+ ") + coef + " " + var;
}

}  // namespace detail

/// Writes the model in LP file format. Objective coefficients are written as
/// exact decimals when they all terminate; otherwise the objective is multiplied
/// by the common denominator and a comment records the factor.
inline void export_lp(const IpModel& model, std::ostream& out) {
    bool decimal = true;
    Integer scale = 1;
    for (const XVar& v : model.x) {
        if (!exact_decimal(v.weight)) decimal = false;
        scale = lcm(scale, v.weight.get_den());
    }
    auto coefficient = [&](const Rational& w) {
        if (decimal) return *exact_decimal(w);
        Rational scaled = w * Rational(scale);
        return scaled.get_num().get_str();
    };

    out << "\\ trajectory capture model, budget " << model.budget << "\n";
    if (!decimal) out << "\\ objective scaled by " << scale.get_str() << "\n";
    out << "Maximize\n";
    {
        detail::LineWrapper line(out, " obj:");
        if (model.x.empty()) {
            line.term(model.node_count > 0 ? "0 y_v0" : "0 x_dummy");
        } else {
            bool first = true;
            for (std::size_t i = 0; i < model.x.size(); ++i) {
                line.term(detail::signed_term(coefficient(model.x[i].weight),
                                              model.variable_name(static_cast<std::int64_t>(model.node_count + i)),
                                              first));
                first = false;
            }
        }
        line.end();
    }
    out << "Subject To\n";
    for (const LinearConstraint& c : model.constraints) {
        detail::LineWrapper line(out, " " + c.name + ":");
        bool first = true;
        for (const auto& [var, coef] : c.terms) {
            line.term(detail::signed_term(std::to_string(coef), model.variable_name(var), first));
            first = false;
        }
        if (c.terms.empty()) line.term("0 y_v0");
        line.term("<= " + *exact_decimal(c.rhs));
        line.end();
    }
    out << "Binary\n";
    {
        detail::LineWrapper line(out, "");
        for (std::size_t v = 0; v < model.variable_count(); ++v) line.term(model.variable_name(static_cast<std::int64_t>(v)));
        if (model.variable_count() == 0) line.term("x_dummy");
        line.end();
    }
    out << "End\n";
    if (!out) throw error(errc::io_error, "failed to write LP file");
}

inline std::string export_lp(const IpModel& model) {
    std::ostringstream out;
    export_lp(model, out);
    return out.str();
}

/// Values for y (by node) and x (by trajectory and edge index); missing entries are 0.
struct FractionalAssignment {
    std::map<NodeId, Rational> y;
    std::map<std::pair<TrajId, std::int32_t>, Rational> x;
};

struct FractionalCheck {
    bool feasible = true;
    Rational objective{0};
    std::vector<std::string> violated;
};

inline FractionalCheck check_fractional(const IpModel& model, const FractionalAssignment& assignment) {
    std::vector<Rational> values(model.variable_count(), Rational(0));
    FractionalCheck result;
    for (const auto& [v, value] : assignment.y) {
        if (v < 0 || static_cast<std::size_t>(v) >= model.node_count) {
            result.violated.push_back("unknown:y_v" + std::to_string(v));
            continue;
        }
        values[static_cast<std::size_t>(v)] = value;
    }
    for (const auto& [key, value] : assignment.x) {
        auto it = model.x_index.find(key);
        if (it == model.x_index.end()) {
            result.violated.push_back("unknown:x_t" + std::to_string(key.first) + "_e" + std::to_string(key.second));
            continue;
        }
        values[static_cast<std::size_t>(it->second)] = value;
    }
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] < 0 || values[i] > 1) result.violated.push_back("bound:" + model.variable_name(static_cast<std::int64_t>(i)));
    for (const LinearConstraint& c : model.constraints) {
        Rational lhs(0);
        for (const auto& [var, coef] : c.terms) lhs += coef * values[static_cast<std::size_t>(var)];
        if (lhs > c.rhs) result.violated.push_back(c.name);
    }
    for (std::size_t i = 0; i < model.x.size(); ++i) result.objective += model.x[i].weight * values[model.node_count + i];
    result.feasible = result.violated.empty();
    return result;
}

/// y = c on every trajectory endpoint, x = c on every trajectory edge.
inline FractionalAssignment uniform_endpoint_assignment(const Instance& instance, const Rational& c) {
    FractionalAssignment a;
    for (const Trajectory& t : instance.trajectories()) {
        a.y[t.nodes.front()] = c;
        a.y[t.nodes.back()] = c;
        for (std::int32_t i = 0; i + 1 < static_cast<std::int32_t>(t.nodes.size()); ++i) a.x[{t.id, i}] = c;
    }
    return a;
}

/// The 0/1 assignment of a portal set: y = 1 on portals, x = 1 on captured edges.
inline FractionalAssignment integral_assignment(const Instance& instance, std::span<const NodeId> portals) {
    detail::check_portals(instance, portals);
    FractionalAssignment a;
    for (NodeId p : portals) a.y[p] = 1;
    auto spans = detail::portal_spans(instance, portals);
    for (const Trajectory& t : instance.trajectories()) {
        const auto& s = spans[static_cast<std::size_t>(t.id)];
        for (std::int32_t i = s.lo; i < s.hi; ++i) a.x[{t.id, i}] = 1;
    }
    return a;
}

}  // namespace tcp
