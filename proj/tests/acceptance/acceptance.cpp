// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"

using namespace tcp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void run(const std::string& name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
}

std::string str(const Rational& r) { return to_string(r); }

Outcome bnb_matches_brute_force() {
    const auto t0 = Clock::now();
    int runs = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Instance in = oracle::small_probabilistic(seed);
        for (int k : {2, 3, 4}) {
            const Rational bnb = solve_branch_and_bound(in, k).value;
            const Rational bf = solve_brute_force(in, k).value;
            if (bnb != bf)
                return {false, "seed " + std::to_string(seed) + " k " + std::to_string(k) + ": " + str(bnb) +
                                   " vs " + str(bf)};
            ++runs;
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << runs << " runs over 200 instances agree, " << secs << " s";
    return {secs <= 60.0, d.str()};
}

Outcome dp_matches_endpoint_enumeration() {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937 pick(static_cast<std::uint32_t>(seed));
        const int n = std::uniform_int_distribution<int>(1, 10)(pick);
        const int k = std::uniform_int_distribution<int>(2, 5)(pick);
        auto iv = gen_1d(n, 0, 40, seed);
        const Rational dp = solve_1d_dp(iv, k).value;
        const Rational want = oracle::interval_optimum(iv, k);
        if (dp != want)
            return {false, "seed " + std::to_string(seed) + ": dp " + str(dp) + " vs enumeration " + str(want)};
    }
    return {true, "100 instances, exact equality"};
}

Outcome square_gap() {
    const int k = 2;
    Instance sq = gen_square_gadget();
    const Rational opt = solve_brute_force(sq, k).value;
    auto frac = check_fractional(build_ip(sq, k), uniform_endpoint_assignment(sq, Rational(1, 2)));
    const Rational ratio = frac.objective / opt;
    const bool ok = frac.feasible && opt == 1 && frac.objective == 2 && ratio == Rational(k, k / 2);
    return {ok, "OPT " + str(opt) + ", fractional " + str(frac.objective) + ", ratio " + str(ratio)};
}

Outcome circle_gap() {
    const int k = 2;
    std::ostringstream d;
    bool ok = true;
    double previous = 0;
    for (int n : {8, 12, 16}) {
        const Instance in = gen_circle_gadget(n).instance;
        auto frac = check_fractional(build_ip(in, k), uniform_endpoint_assignment(in, Rational(k, n)));
        const Rational opt = solve_brute_force(in, k).value;
        const double ratio = Rational(frac.objective / opt).get_d();
        const double bound = static_cast<double>(n * n) / (8.0 * k * k * k);
        ok = ok && frac.feasible && ratio > previous && ratio >= 0.99 * bound;
        d << "n=" << n << " ratio " << ratio << " (bound " << bound << ") ";
        previous = ratio;
    }
    return {ok, d.str()};
}

Outcome delta_approximation() {
    int worst_seed = -1;
    double worst = 1e300;
    for (std::uint32_t seed = 0; seed < 100; ++seed) {
        Instance in = seed % 2 ? oracle::random_graph_instance(seed, 9, 5) : oracle::small_probabilistic(seed);
        const int k = 2 + static_cast<int>(seed % 4);
        const int delta = oracle::depth(in);
        const Rational opt = oracle::optimum(in, k);
        const Rational value = approx_depth_greedy(in, k).value;
        // even k: value >= OPT / delta; odd k: value >= OPT (k-1) / (delta k)
        const Rational bound = k % 2 == 0 ? Rational(opt / delta) : Rational(opt * (k - 1) / (delta * k));
        if (value < bound)
            return {false, "seed " + std::to_string(seed) + " k " + std::to_string(k) + ": " + str(value) + " < " +
                               str(bound)};
        if (bound > 0 && Rational(value / bound).get_d() < worst) {
            worst = Rational(value / bound).get_d();
            worst_seed = static_cast<int>(seed);
        }
    }
    std::ostringstream d;
    d << "100 trials, tightest value/bound " << worst << " (seed " << worst_seed << ")";
    return {true, d.str()};
}

Outcome orientation_approximation() {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Instance in = gen_axis_parallel(5 + static_cast<int>(seed % 2), seed);
        const int k = 2 + static_cast<int>(seed % 3);
        const Rational opt = oracle::optimum(in, k);
        const Rational value = approx_orientation(in, k).value;
        if (2 * value < opt)
            return {false, "seed " + std::to_string(seed) + ": " + str(value) + " vs OPT " + str(opt)};
    }
    return {true, "50 axis-parallel instances, value >= OPT/2"};
}

Outcome heuristic_suite() {
    const auto t0 = Clock::now();
    const int k = 10;
    double ils_sum = 0, sa_sum = 0, greedy_min = 1e300;
    int kept = 0;
    for (std::uint64_t seed = 0; kept < 30 && seed < 1000; ++seed) {
        GenConfig c;
        c.seed = seed;
        Instance in = gen_probabilistic(c);
        if (in.node_count() < 200 || in.node_count() > 600) continue;
        Solution opt = solve_branch_and_bound(in, k);
        if (!opt.proven_optimal || opt.value == 0) continue;
        const double o = opt.value.get_d();
        ils_sum += ils(in, k).value.get_d() / o;
        SaParams p;
        p.seed = seed;
        sa_sum += sa(in, k, p).value.get_d() / o;
        greedy_min = std::min(greedy_min, greedy(in, k).value.get_d() / o);
        ++kept;
    }
    const double secs = seconds_since(t0);
    const double ils_mean = ils_sum / kept, sa_mean = sa_sum / kept;
    std::ostringstream d;
    d << kept << " instances, mean ILS/OPT " << ils_mean << ", mean SA/OPT " << sa_mean << ", min greedy/OPT "
      << greedy_min << ", " << secs << " s";
    const bool ok = kept == 30 && ils_mean >= 0.9 && sa_mean >= ils_mean - 0.02 && greedy_min >= 0.5 && secs <= 900;
    return {ok, d.str()};
}

Outcome property_suite() {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        Instance in = trial % 2 ? oracle::random_graph_instance(static_cast<std::uint32_t>(trial), 10, 6)
                                : oracle::small_probabilistic(static_cast<std::uint64_t>(trial % 200));
        const int n = static_cast<int>(in.node_count());
        std::vector<NodeId> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        const int big = std::uniform_int_distribution<int>(1, n)(rng);
        const int small = std::uniform_int_distribution<int>(0, big - 1)(rng);
        std::vector<NodeId> p(all.begin(), all.begin() + small), q(all.begin(), all.begin() + big);
        std::sort(p.begin(), p.end());
        std::sort(q.begin(), q.end());
        if (evaluate(in, p) > evaluate(in, q)) return {false, "monotonicity broken at trial " + std::to_string(trial)};
    }
    for (std::uint32_t seed = 0; seed < 100; ++seed) {
        Instance in = oracle::random_graph_instance(seed, 10, 5);
        std::vector<NodeId> portals{static_cast<NodeId>(seed % 10), static_cast<NodeId>((seed + 3) % 10),
                                    static_cast<NodeId>((seed + 7) % 10)};
        std::sort(portals.begin(), portals.end());
        auto local = neighbors(in, portals, NeighborhoodMode::local);
        auto global = neighbors(in, portals, NeighborhoodMode::global);
        std::set<std::vector<NodeId>> l(local.begin(), local.end()), g(global.begin(), global.end());
        if (!std::includes(g.begin(), g.end(), l.begin(), l.end()))
            return {false, "local neighborhood escapes global at seed " + std::to_string(seed)};
    }
    GenConfig c;
    c.seed = 4;
    c.n_seeds = 16;
    Instance in = gen_probabilistic(c);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        SaParams sp;
        sp.seed = seed;
        sp.termination.max_iterations = 20000;
        auto a = sa(in, 6, sp), b = sa(in, 6, sp);
        if (a.portals != b.portals || a.value != b.value) return {false, "SA differs for seed " + std::to_string(seed)};
        EaParams ep;
        ep.seed = seed;
        ep.max_rounds = 4;
        auto x = ea(in, 6, ep), y = ea(in, 6, ep);
        if (x.portals != y.portals || x.value != y.value) return {false, "EA differs for seed " + std::to_string(seed)};
    }
    return {true, "1000 monotone pairs, local within global on 100 instances, SA/EA repeat exactly"};
}

Outcome sat_gadget_structure() {
    std::mt19937 pick(7);
    for (std::uint64_t f = 0; f < 10; ++f) {
        const int n = std::uniform_int_distribution<int>(3, 6)(pick);
        const int m = std::uniform_int_distribution<int>(1, 6)(pick);
        auto g = gen_3sat_gadget(random_cnf(n, m, f));
        int vertical = 0, horizontal = 0;
        for (const Segment& s : g.segments) {
            vertical += s.p.x == s.q.x;
            horizontal += s.p.y == s.q.y;
        }
        const std::string at = "formula " + std::to_string(f) + " (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")";
        if (vertical != 2 * n + m || horizontal != 2 * n * (m + 1))
            return {false, at + ": " + std::to_string(vertical) + " vertical, " + std::to_string(horizontal) + " horizontal"};
        for (int j = 0; j < m; ++j) {
            const Segment& clause = g.segments[static_cast<std::size_t>(j)];
            std::set<Point> ends;
            for (const Segment& s : g.segments) {
                if (s.p.y != s.q.y) continue;
                for (const Point& p : {s.p, s.q})
                    if (p.x == clause.p.x && p.y >= std::min(clause.p.y, clause.q.y) &&
                        p.y <= std::max(clause.p.y, clause.q.y))
                        ends.insert(p);
            }
            if (ends.size() != 3) return {false, at + ": clause " + std::to_string(j) + " has " + std::to_string(ends.size()) + " literal ends"};
        }
    }
    auto tiny = gen_3sat_gadget(Cnf{2, {{1, -1, 2}}});
    auto portals = sat_assignment_portals(tiny, {true, true});
    const Rational v = evaluate(tiny.instance, portals);
    // both reported thresholds must be met
    const Rational need = std::max(tiny.threshold, tiny.epsilon_bound);
    const bool ok = static_cast<int>(portals.size()) <= tiny.budget && v >= need;
    return {ok, "10 formulas match counts; tiny formula " + str(v) + " vs threshold " + str(tiny.threshold) +
                    ", eps bound " + str(tiny.epsilon_bound)};
}

}  // namespace

int main() {
    run("bnb-equals-brute-force", bnb_matches_brute_force);
    run("dp1d-equals-enumeration", dp_matches_endpoint_enumeration);
    run("square-gap", square_gap);
    run("circle-gap-growth", circle_gap);
    run("delta-approximation", delta_approximation);
    run("orientation-approximation", orientation_approximation);
    run("heuristic-quality", heuristic_suite);
    run("property-suite", property_suite);
    run("3sat-gadget-structure", sat_gadget_structure);
    return failures == 0 ? 0 : 1;
}
