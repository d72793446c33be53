/**
 * Benchmark grid runner. Cells are (instance, k, algorithm, seed) in that
 * nesting order; rows come out in the same order whatever the worker count.
 */
#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "tcp/io.hpp"
#include "tcp/solve.hpp"

namespace tcp {

struct BenchAlgorithm {
    std::string name;
    std::map<std::string, std::string> params;
};

struct BenchGrid {
    std::vector<std::string> instances;  // paths to instance JSON
    std::vector<BenchAlgorithm> algorithms;
    std::vector<int> k;
    std::vector<std::uint64_t> seeds{0};
    std::optional<double> time_limit;  // per cell, seconds
    int threads = 1;                   // cells run concurrently
    NeighborhoodMode mode = NeighborhoodMode::local;
    // "bb": when no cell proved an optimum for an (instance, k), run branch and
    // bound once under time_limit to get one. "none": only use proven cells.
    std::string reference = "bb";
};

struct BenchRecord {
    std::string instance_name;
    std::string algorithm;
    int k = 0;
    std::uint64_t seed = 0;
    std::string params;
    Rational value{0};
    double wall_time_ms = 0.0;
    bool proven_optimal = false;
    std::optional<Rational> ratio_to_reference;
    std::string status = "ok";
    std::vector<NodeId> portals;
};

/// Grid config JSON. Instance paths are resolved relative to `base_dir`.
inline BenchGrid grid_from_json(const json& j, const std::filesystem::path& base_dir = {}) {
    return detail::guarded([&] {
        BenchGrid g;
        for (const auto& p : j.at("instances")) {
            std::filesystem::path path = p.get<std::string>();
            g.instances.push_back((path.is_relative() && !base_dir.empty() ? base_dir / path : path).string());
        }
        for (const auto& a : j.at("algorithms")) {
            BenchAlgorithm alg;
            if (a.is_string()) {
                alg.name = a.get<std::string>();
            } else {
                alg.name = a.at("name").get<std::string>();
                if (a.contains("params"))
                    for (const auto& [key, value] : a.at("params").items())
                        alg.params[key] = value.is_string() ? value.get<std::string>() : value.dump();
            }
            g.algorithms.push_back(std::move(alg));
        }
        g.k = j.at("k").get<std::vector<int>>();
        if (j.contains("seeds")) g.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        if (j.contains("time_limit")) g.time_limit = j.at("time_limit").get<double>();
        if (j.contains("threads")) g.threads = j.at("threads").get<int>();
        if (j.contains("neighborhood")) g.mode = parse_mode(j.at("neighborhood").get<std::string>());
        if (j.contains("reference")) g.reference = j.at("reference").get<std::string>();
        if (g.reference != "bb" && g.reference != "none") throw error(errc::invalid_input, "reference must be bb or none");
        if (g.instances.empty() || g.algorithms.empty() || g.k.empty() || g.seeds.empty())
            throw error(errc::invalid_input, "bench grid needs instances, algorithms, k and seeds");
        return g;
    });
}

inline bool is_exact_algorithm(const std::string& name) { return name == "brute" || name == "bb" || name == "dp"; }

inline std::vector<BenchRecord> run_bench(const BenchGrid& grid, const std::vector<Instance>& instances) {
    struct Cell {
        std::size_t instance;
        int k;
        const BenchAlgorithm* algorithm;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < instances.size(); ++i)
        for (int k : grid.k)
            for (const auto& alg : grid.algorithms)
                for (std::uint64_t seed : grid.seeds) cells.push_back({i, k, &alg, seed});

    std::vector<BenchRecord> rows(cells.size());
    auto run_cell = [&](std::size_t c) {
        const Cell& cell = cells[c];
        BenchRecord& r = rows[c];
        r.instance_name = instances[cell.instance].name();
        r.algorithm = cell.algorithm->name;
        r.k = cell.k;
        r.seed = cell.seed;
        SolveRequest req{cell.algorithm->name, cell.k, cell.seed, grid.time_limit, 1, grid.mode, cell.algorithm->params};
        const auto start = std::chrono::steady_clock::now();
        try {
            SolveOutcome out = solve(instances[cell.instance], req);
            r.params = out.params;
            r.value = out.solution.value;
            r.proven_optimal = out.solution.proven_optimal;
            r.portals = out.solution.portals;
            if (is_exact_algorithm(r.algorithm) && !r.proven_optimal) r.status = "timeout";
        } catch (const error& e) {
            r.status = std::string("error:") + errc_name(e.code());
        } catch (const std::exception& e) {
            r.status = "error:internal";
        }
        r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    const int workers = std::max(1, std::min<int>(grid.threads, static_cast<int>(cells.size())));
    if (workers == 1) {
        for (std::size_t c = 0; c < cells.size(); ++c) run_cell(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t c; (c = next.fetch_add(1)) < cells.size();) run_cell(c);
            });
        for (auto& t : pool) t.join();
    }

    // Reference: best proven optimum per (instance, k).
    std::map<std::pair<std::size_t, int>, Rational> reference;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const BenchRecord& r = rows[c];
        if (r.status != "ok" || !r.proven_optimal) continue;
        auto key = std::pair{cells[c].instance, cells[c].k};
        auto it = reference.find(key);
        if (it == reference.end() || r.value > it->second) reference[key] = r.value;
    }
    if (grid.reference == "bb") {
        std::set<std::pair<std::size_t, int>> tried;
        for (const Cell& cell : cells) {
            auto key = std::pair{cell.instance, cell.k};
            if (reference.count(key) || !tried.insert(key).second) continue;
            try {
                BranchAndBoundOptions o;
                o.time_limit_seconds = grid.time_limit.value_or(std::numeric_limits<double>::infinity());
                Solution s = solve_branch_and_bound(instances[cell.instance], cell.k, o);
                if (s.proven_optimal) reference[key] = s.value;
            } catch (const error&) {
            }
        }
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
        BenchRecord& r = rows[c];
        auto it = reference.find({cells[c].instance, cells[c].k});
        if (r.status.rfind("error:", 0) == 0 || it == reference.end()) continue;
        r.ratio_to_reference = it->second == 0 ? Rational(r.value == 0 ? 1 : 0) : Rational(r.value / it->second);
    }
    return rows;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

}  // namespace detail

inline std::string bench_csv_header() {
    return "instance,algorithm,k,seed,params,value,value_exact,wall_time_ms,proven_optimal,ratio_to_reference,status\n";
}

inline std::string bench_csv_row(const BenchRecord& r) {
    std::ostringstream out;
    out << detail::csv_field(r.instance_name) << ',' << detail::csv_field(r.algorithm) << ',' << r.k << ',' << r.seed
        << ',' << detail::csv_field(r.params) << ',' << to_decimal(r.value, 12) << ',' << to_string(r.value) << ',';
    out.setf(std::ios::fixed);
    out.precision(3);
    out << r.wall_time_ms << ',' << (r.proven_optimal ? "true" : "false") << ','
        << (r.ratio_to_reference ? to_decimal(*r.ratio_to_reference, 12) : std::string()) << ','
        << detail::csv_field(r.status) << '\n';
    return out.str();
}

inline std::string bench_csv(const std::vector<BenchRecord>& rows) {
    std::string out = bench_csv_header();
    for (const auto& r : rows) out += bench_csv_row(r);
    return out;
}

/// Portal sets for every row, so each value can be re-evaluated.
inline json bench_sidecar(const std::vector<BenchRecord>& rows) {
    json list = json::array();
    for (const auto& r : rows)
        list.push_back(json{{"instance", r.instance_name}, {"algorithm", r.algorithm}, {"k", r.k}, {"seed", r.seed},
                            {"portals", r.portals}, {"value", to_string(r.value)}, {"status", r.status}});
    return list;
}

}  // namespace tcp
