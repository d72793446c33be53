#pragma once

#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tcp/annealing.hpp"
#include "tcp/approx.hpp"
#include "tcp/branch_and_bound.hpp"
#include "tcp/brute_force.hpp"
#include "tcp/evolutionary.hpp"
#include "tcp/greedy.hpp"
#include "tcp/local_search.hpp"

namespace tcp {

inline const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names{"brute", "bb", "dp", "k-approx", "depth-greedy", "greedy", "ils", "sa", "ea"};
    return names;
}

struct SolveRequest {
    std::string algorithm;
    int k = 2;
    std::uint64_t seed = 0;
    std::optional<double> time_limit;  // seconds
    int threads = 1;
    NeighborhoodMode mode = NeighborhoodMode::local;
    std::map<std::string, std::string> params;  // algorithm-specific overrides
};

struct SolveOutcome {
    Solution solution;
    std::string params;  // effective parameters, "key=value;..." sorted by key
};

namespace detail {

class ParamReader {
 public:
    explicit ParamReader(const std::map<std::string, std::string>& params) : params_(params) {}

    template <class T>
    std::optional<T> get(const std::string& key) {
        used_.emplace(key, "");
        auto it = params_.find(key);
        if (it == params_.end()) return std::nullopt;
        std::istringstream in(it->second);
        T value{};
        if constexpr (std::is_same_v<T, std::string>) {
            value = it->second;
        } else if (!(in >> value) || !(in >> std::ws).eof()) {
            throw error(errc::invalid_input, "bad value for parameter " + key + ": " + it->second);
        }
        return value;
    }

    void finish() const {
        for (const auto& [key, value] : params_)
            if (!used_.count(key)) throw error(errc::invalid_input, "unknown parameter " + key);
    }

 private:
    const std::map<std::string, std::string>& params_;
    std::map<std::string, std::string> used_;
};

template <class T>
std::string fmt(const T& value) {
    std::ostringstream out;
    out.precision(17);
    out << value;
    return out.str();
}

}  // namespace detail

inline SolveOutcome solve(const Instance& instance, const SolveRequest& request) {
    const std::string& a = request.algorithm;
    const int k = request.k;
    detail::ParamReader params(request.params);
    std::map<std::string, std::string> effective;
    const double limit = request.time_limit.value_or(std::numeric_limits<double>::infinity());
    Solution s;

    if (a == "brute") {
        BruteForceOptions o;
        o.max_subsets = params.get<std::uint64_t>("max_subsets").value_or(o.max_subsets);
        o.threads = request.threads;
        effective["max_subsets"] = detail::fmt(o.max_subsets);
        s = solve_brute_force(instance, k, o);
    } else if (a == "bb") {
        BranchAndBoundOptions o;
        o.time_limit_seconds = limit;
        o.threads = request.threads;
        effective["time_limit"] = detail::fmt(limit);
        s = solve_branch_and_bound(instance, k, o);
    } else if (a == "dp") {
        if (decompose_orientation_classes(instance).size() > 1)
            throw error(errc::not_decomposable, "dp needs trajectories of a single orientation");
        s = approx_orientation(instance, k);
    } else if (a == "k-approx") {
        s = approx_orientation(instance, k);
    } else if (a == "depth-greedy") {
        s = approx_depth_greedy(instance, k);
    } else if (a == "greedy") {
        s = greedy(instance, k);
    } else if (a == "ils") {
        IlsOptions o;
        o.mode = request.mode;
        if (auto v = params.get<std::int64_t>("max_iterations")) o.termination.max_iterations = v;
        if (request.time_limit) o.termination.max_wall_seconds = request.time_limit;
        effective["neighborhood"] = mode_name(o.mode);
        if (o.termination.max_iterations) effective["max_iterations"] = detail::fmt(*o.termination.max_iterations);
        s = ils(instance, k, greedy(instance, k), o);
    } else if (a == "sa" || a == "ea") {
        SaParams p;
        p.seed = request.seed;
        p.mode = request.mode;
        p.workers = request.threads;
        p.start_temperature = params.get<double>("start_temperature");
        p.cooling_factor = params.get<double>("cooling_factor").value_or(p.cooling_factor);
        p.reheat_after = params.get<std::int64_t>("reheat_after").value_or(p.reheat_after);
        if (auto v = params.get<std::int64_t>("max_iterations")) p.termination.max_iterations = *v;
        if (auto v = params.get<std::int64_t>("max_stagnation")) p.termination.max_stagnation = *v;
        if (a == "sa" && request.time_limit) p.termination.max_wall_seconds = request.time_limit;
        effective["start_temperature"] =
            detail::fmt(p.start_temperature.value_or(0.05 * instance.total_weight_double()));
        effective["cooling_factor"] = detail::fmt(p.cooling_factor);
        effective["reheat_after"] = detail::fmt(p.reheat_after);
        if (p.termination.max_iterations) effective["max_iterations"] = detail::fmt(*p.termination.max_iterations);
        if (p.termination.max_stagnation) effective["max_stagnation"] = detail::fmt(*p.termination.max_stagnation);
        effective["neighborhood"] = mode_name(p.mode);
        if (a == "sa") {
            if (auto w = params.get<int>("workers")) p.workers = *w;
            effective["workers"] = detail::fmt(p.workers);
            s = sa(instance, k, p);
        } else {
            EaParams e;
            e.seed = request.seed;
            e.mode = request.mode;
            e.threads = request.threads;
            e.sa = p;
            e.initial_population = params.get<int>("initial_population").value_or(e.initial_population);
            e.population = params.get<int>("population").value_or(e.population);
            e.offspring_per_round = params.get<int>("offspring").value_or(e.offspring_per_round);
            e.stagnation_rounds = params.get<int>("stagnation_rounds").value_or(e.stagnation_rounds);
            e.max_rounds = params.get<int>("max_rounds");
            if (auto m = params.get<std::string>("mutation")) {
                if (*m == "ils") e.mutation = Mutation::ils;
                else if (*m == "sa") e.mutation = Mutation::sa;
                else throw error(errc::invalid_input, "mutation must be ils or sa");
            }
            e.wall_time_limit_seconds = request.time_limit.value_or(e.wall_time_limit_seconds);
            effective["initial_population"] = detail::fmt(e.initial_population);
            effective["population"] = detail::fmt(e.population);
            effective["offspring"] = detail::fmt(e.offspring_per_round);
            effective["stagnation_rounds"] = detail::fmt(e.stagnation_rounds);
            effective["mutation"] = e.mutation == Mutation::ils ? "ils" : "sa";
            effective["wall_time_limit"] = detail::fmt(e.wall_time_limit_seconds);
            if (e.max_rounds) effective["max_rounds"] = detail::fmt(*e.max_rounds);
            s = ea(instance, k, e);
        }
    } else {
        throw error(errc::invalid_input, "unknown algorithm '" + a + "'");
    }
    params.finish();

    std::string flat;
    for (const auto& [key, value] : effective) flat += (flat.empty() ? "" : ";") + key + "=" + value;
    return SolveOutcome{std::move(s), std::move(flat)};
}

}  // namespace tcp
