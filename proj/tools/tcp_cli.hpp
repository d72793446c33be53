// Command-line front end. Kept in a header so tests can drive it in-process.
#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tcp/tcp.hpp"

namespace tcp::cli {

namespace detail {

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        write_text_file(path, text);
}

inline std::map<std::string, std::string> parse_params(const std::vector<std::string>& items) {
    std::map<std::string, std::string> params;
    for (const auto& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw error(errc::invalid_input, "parameter must look like key=value: " + item);
        params[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return params;
}

inline Cnf load_cnf(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::io_error, "cannot open " + path);
    return parse_dimacs(in);
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Trajectory capture: generate instances, solve, evaluate and benchmark"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Write a generated instance as JSON");
    std::string kind, gen_output, probability = "1/10", seed_points, segments_file, polylines_file, pitch = "1", cnf_file,
                                  epsilon;
    std::uint64_t gen_seed = 0;
    int gen_n = 0, lo = 0, hi = 100, vars = 3, clauses = 3;
    bool incremental = false;
    std::size_t max_pool = 0;
    std::int64_t grid = 0;
    gen->add_option("--kind", kind, "probabilistic|axis-parallel|1d|square|circle|3sat|arrangement|snap")
        ->required()
        ->check(CLI::IsMember({"probabilistic", "axis-parallel", "1d", "square", "circle", "3sat", "arrangement", "snap"}));
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_option("--n", gen_n, "Seed points, segments, intervals or circle points");
    gen->add_option("--p", probability, "Connect probability (p/q or decimal)");
    gen->add_flag("--incremental", incremental, "Add intersection points to the seed pool");
    gen->add_option("--seed-points", seed_points, "CSV file of x,y seed points");
    gen->add_option("--max-pool", max_pool, "Seed pool cap in incremental mode");
    gen->add_option("--grid", grid, "Axis-parallel grid side");
    gen->add_option("--lo", lo, "1d: smallest coordinate");
    gen->add_option("--hi", hi, "1d: largest coordinate");
    gen->add_option("--cnf", cnf_file, "3sat: DIMACS formula");
    gen->add_option("--vars", vars, "3sat: variables of a random formula");
    gen->add_option("--clauses", clauses, "3sat: clauses of a random formula");
    gen->add_option("--epsilon", epsilon, "3sat: shift size");
    gen->add_option("--segments", segments_file, "arrangement: CSV x1,y1,x2,y2");
    gen->add_option("--polylines", polylines_file, "snap: CSV trace_id,lat,lon[,timestamp]");
    gen->add_option("--pitch", pitch, "snap: grid pitch");
    gen->add_option("-o,--output", gen_output, "Output file (default stdout)");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
    std::string solve_instance, algorithm, neighborhood = "local", format = "json", solve_output, export_lp_path;
    int k = 2, threads = 1;
    std::uint64_t seed = 0;
    std::optional<double> time_limit;
    std::vector<std::string> raw_params;
    std::map<std::string, std::string> flag_params;
    solve_cmd->add_option("instance", solve_instance, "Instance JSON")->required();
    solve_cmd->add_option("--algorithm", algorithm)->required()->check(CLI::IsMember(algorithm_names()));
    solve_cmd->add_option("--k", k, "Portal budget")->required();
    solve_cmd->add_option("--seed", seed);
    solve_cmd->add_option("--time-limit", time_limit, "Seconds");
    solve_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);
    solve_cmd->add_option("--neighborhood", neighborhood)->check(CLI::IsMember({"local", "global"}));
    solve_cmd->add_option("--param", raw_params, "Algorithm parameter key=value (repeatable)");
    for (const char* name : {"start_temperature", "cooling_factor", "reheat_after", "max_iterations", "max_stagnation",
                             "workers", "initial_population", "population", "offspring", "mutation",
                             "stagnation_rounds", "max_rounds", "max_subsets"}) {
        std::string flag = std::string("--") + name;
        for (auto& c : flag)
            if (c == '_') c = '-';
        solve_cmd->add_option_function<std::string>(flag, [&flag_params, name](const std::string& v) { flag_params[name] = v; });
    }
    solve_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    solve_cmd->add_option("-o,--output", solve_output);
    solve_cmd->add_option("--export-lp", export_lp_path, "Also write the IP model in LP format");

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "Captured weight of a solution");
    std::string eval_instance, eval_solution, eval_format = "plain";
    eval_cmd->add_option("instance", eval_instance)->required();
    eval_cmd->add_option("solution", eval_solution)->required();
    eval_cmd->add_option("--format", eval_format)->check(CLI::IsMember({"plain", "json", "csv"}));

    // export-lp
    auto* lp_cmd = app.add_subcommand("export-lp", "Write the IP model in LP format");
    std::string lp_instance, lp_output;
    int lp_k = 2;
    lp_cmd->add_option("instance", lp_instance)->required();
    lp_cmd->add_option("--k", lp_k)->required();
    lp_cmd->add_option("-o,--output", lp_output);

    // check-fractional
    auto* frac_cmd = app.add_subcommand("check-fractional", "Check a fractional assignment against the IP model");
    std::string frac_instance, frac_assignment;
    int frac_k = 2;
    frac_cmd->add_option("instance", frac_instance)->required();
    frac_cmd->add_option("assignment", frac_assignment)->required();
    frac_cmd->add_option("--k", frac_k)->required();

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark grid");
    std::string bench_config, bench_output, bench_sidecar_path;
    std::optional<int> bench_threads;
    bench_cmd->add_option("config", bench_config, "Grid config JSON")->required();
    bench_cmd->add_option("-o,--output", bench_output, "CSV output (default stdout)");
    bench_cmd->add_option("--sidecar", bench_sidecar_path, "JSON file for the portal sets");
    bench_cmd->add_option("--threads", bench_threads)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        CLI::App* sub = nullptr;
        for (auto* s : app.get_subcommands()) sub = s;
        err << (sub ? sub->help() : app.help());
        return 1;
    }

    try {
        if (*gen) {
            std::string text;
            if (kind == "probabilistic") {
                GenConfig c;
                if (gen_n) c.n_seeds = gen_n;
                c.connect_probability = parse_rational(probability);
                c.seed = gen_seed;
                c.incremental_intersections = incremental;
                if (!seed_points.empty()) c.seed_points_file = seed_points;
                c.max_seed_pool = max_pool;
                text = to_json(gen_probabilistic(c)).dump(2);
            } else if (kind == "axis-parallel") {
                text = to_json(gen_axis_parallel(gen_n ? gen_n : 20, gen_seed, grid)).dump(2);
            } else if (kind == "1d") {
                auto intervals = gen_1d(gen_n ? gen_n : 10, lo, hi, gen_seed);
                text = to_json(intervals_to_instance(intervals, "1d-" + std::to_string(gen_seed))).dump(2);
            } else if (kind == "square") {
                text = to_json(gen_square_gadget()).dump(2);
            } else if (kind == "circle") {
                text = to_json(gen_circle_gadget(gen_n ? gen_n : 8).instance).dump(2);
            } else if (kind == "3sat") {
                Cnf cnf = cnf_file.empty() ? random_cnf(vars, clauses, gen_seed) : detail::load_cnf(cnf_file);
                std::optional<Rational> eps;
                if (!epsilon.empty()) eps = parse_rational(epsilon);
                text = to_json(gen_3sat_gadget(cnf, eps).instance).dump(2);
            } else if (kind == "arrangement") {
                if (segments_file.empty()) throw error(errc::invalid_input, "--segments is required");
                std::ifstream in(segments_file);
                if (!in) throw error(errc::io_error, "cannot open " + segments_file);
                text = to_json(build_arrangement(read_segments_csv(in), std::filesystem::path(segments_file).stem().string()))
                           .dump(2);
            } else {
                if (polylines_file.empty()) throw error(errc::invalid_input, "--polylines is required");
                std::ifstream in(polylines_file);
                if (!in) throw error(errc::io_error, "cannot open " + polylines_file);
                auto snapped = snap_polylines(read_polylines_csv(in), parse_rational(pitch),
                                              std::filesystem::path(polylines_file).stem().string());
                if (snapped.dropped) err << "warning: dropped " << snapped.dropped << " trace(s) that snap to one node\n";
                text = to_json(snapped.instance).dump(2);
            }
            detail::emit(text + "\n", gen_output, out);
        } else if (*solve_cmd) {
            const Instance instance = load_instance(solve_instance);
            auto params = detail::parse_params(raw_params);
            for (const auto& [key, v] : flag_params) params[key] = v;
            SolveRequest req{algorithm, k, seed, time_limit, threads, parse_mode(neighborhood), params};
            const auto start = std::chrono::steady_clock::now();
            SolveOutcome result = solve(instance, req);
            const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            if (!export_lp_path.empty()) write_text_file(export_lp_path, export_lp(build_ip(instance, k)));
            std::string text;
            if (format == "json") {
                SolutionRecord rec{instance.name(), k, result.solution.portals, result.solution.value,
                                   result.solution.proven_optimal, algorithm, seed};
                json j = to_json(rec);
                j["params"] = result.params;
                j["wall_time_ms"] = ms;
                text = j.dump(2) + "\n";
            } else {
                BenchRecord r;
                r.instance_name = instance.name();
                r.algorithm = algorithm;
                r.k = k;
                r.seed = seed;
                r.params = result.params;
                r.value = result.solution.value;
                r.wall_time_ms = ms;
                r.proven_optimal = result.solution.proven_optimal;
                if (is_exact_algorithm(algorithm) && !r.proven_optimal) r.status = "timeout";
                text = bench_csv_header() + bench_csv_row(r);
            }
            detail::emit(text, solve_output, out);
        } else if (*eval_cmd) {
            const Instance instance = load_instance(eval_instance);
            const SolutionRecord rec = solution_from_json(read_json_file(eval_solution));
            const Rational value = evaluate(instance, rec.portals);
            if (eval_format == "plain") {
                out << to_string(value) << "\n";
            } else {
                auto per = captured_per_trajectory(instance, rec.portals);
                if (eval_format == "json") {
                    json j{{"value", to_string(value)}, {"per_trajectory", json::array()}};
                    for (const auto& r : per) j["per_trajectory"].push_back(to_string(r));
                    out << j.dump(2) << "\n";
                } else {
                    out << "trajectory,captured\n";
                    for (std::size_t t = 0; t < per.size(); ++t) out << t << ',' << to_string(per[t]) << "\n";
                }
            }
        } else if (*lp_cmd) {
            detail::emit(export_lp(build_ip(load_instance(lp_instance), lp_k)), lp_output, out);
        } else if (*frac_cmd) {
            const Instance instance = load_instance(frac_instance);
            auto check = check_fractional(build_ip(instance, frac_k), assignment_from_json(read_json_file(frac_assignment)));
            out << to_json(check).dump(2) << "\n";
        } else if (*bench_cmd) {
            BenchGrid grid = grid_from_json(read_json_file(bench_config), std::filesystem::path(bench_config).parent_path());
            if (bench_threads) grid.threads = *bench_threads;
            std::vector<Instance> instances;
            for (const auto& path : grid.instances) instances.push_back(load_instance(path));
            auto rows = run_bench(grid, instances);
            detail::emit(bench_csv(rows), bench_output, out);
            if (!bench_sidecar_path.empty()) write_text_file(bench_sidecar_path, bench_sidecar(rows).dump(2) + "\n");
        }
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace tcp::cli
