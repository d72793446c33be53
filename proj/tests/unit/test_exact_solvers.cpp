#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"

using namespace tcp;

namespace {

std::vector<Interval1D> random_intervals(std::uint32_t seed, int n) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> c(0, 20);
    std::vector<Interval1D> out;
    while (static_cast<int>(out.size()) < n) {
        int a = c(rng), b = c(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        out.push_back({Rational(a), Rational(b)});
    }
    return out;
}

const LinearConstraint* find_constraint(const IpModel& m, const std::string& name) {
    for (const auto& c : m.constraints)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST(Dp1d, Examples) {
    std::vector<Interval1D> nested{{Rational(0), Rational(10)}, {Rational(2), Rational(8)}};
    auto s = solve_1d_dp(nested, 2);
    EXPECT_EQ(s.value, 12);
    EXPECT_EQ(s.positions, (std::vector<Rational>{Rational(2), Rational(8)}));

    std::vector<Interval1D> one{{Rational(0), Rational(5)}};
    EXPECT_EQ(solve_1d_dp(one, 2).value, 5);
    std::vector<Interval1D> apart{{Rational(0), Rational(1)}, {Rational(2), Rational(3)}};
    EXPECT_EQ(solve_1d_dp(apart, 2).value, 1);
    EXPECT_EQ(solve_1d_dp(apart, 4).value, 2);
}

TEST(Dp1d, MatchesEndpointEnumeration) {
    for (std::uint32_t seed = 0; seed < 60; ++seed) {
        auto iv = random_intervals(seed, 1 + static_cast<int>(seed % 7));
        for (int k = 2; k <= 5; ++k) {
            auto s = solve_1d_dp(iv, k);
            EXPECT_EQ(s.value, oracle::interval_optimum(iv, k)) << "seed " << seed << " k " << k;
            EXPECT_LE(static_cast<int>(s.positions.size()), k);
        }
    }
}

TEST(Dp1d, ReportedPositionsAchieveValue) {
    for (std::uint32_t seed = 100; seed < 130; ++seed) {
        auto iv = random_intervals(seed, 6);
        auto s = solve_1d_dp(iv, 3);
        Rational v = 0;
        for (const auto& i : iv) {
            std::vector<Rational> in;
            for (const auto& p : s.positions)
                if (p >= i.a && p <= i.b) in.push_back(p);
            if (in.size() >= 2) v += *std::max_element(in.begin(), in.end()) - *std::min_element(in.begin(), in.end());
        }
        EXPECT_EQ(v, s.value);
    }
}

TEST(Dp1d, RejectsBadInput) {
    std::vector<Interval1D> bad{{Rational(3), Rational(3)}};
    EXPECT_THROW(solve_1d_dp(bad, 2), error);
    std::vector<Interval1D> ok{{Rational(0), Rational(1)}};
    EXPECT_THROW(solve_1d_dp(ok, 1), error);
    EXPECT_THROW(solve_1d_dp(std::vector<Interval1D>{}, 2), error);
}

TEST(Dp1d, AgreesWithInstanceSolvers) {
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
        auto iv = random_intervals(seed + 500, 5);
        Instance in = intervals_to_instance(iv);
        for (int k = 2; k <= 4; ++k) {
            const Rational dp = solve_1d_dp(iv, k).value;
            EXPECT_EQ(solve_brute_force(in, k).value, dp);
            Solution line = approx_orientation(in, k);
            EXPECT_EQ(line.value, dp);
            EXPECT_TRUE(line.proven_optimal);
        }
    }
}

TEST(BruteForce, Examples) {
    Instance sq = gen_square_gadget();
    auto s2 = solve_brute_force(sq, 2);
    EXPECT_EQ(s2.value, 1);
    EXPECT_TRUE(s2.proven_optimal);
    EXPECT_EQ(evaluate(sq, s2.portals), 1);
    EXPECT_EQ(solve_brute_force(sq, 8).value, 4);
    auto path = solve_brute_force(oracle::unit_path(), 2);
    EXPECT_EQ(path.value, 6);
    EXPECT_EQ(path.portals, (std::vector<NodeId>{0, 6}));
}

TEST(BruteForce, MatchesMaskEnumeration) {
    for (std::uint32_t seed = 0; seed < 40; ++seed) {
        Instance in = oracle::random_graph_instance(seed, 9, 5);
        for (int k = 2; k <= 4; ++k) {
            auto s = solve_brute_force(in, k);
            EXPECT_EQ(s.value, oracle::optimum(in, k));
            EXPECT_EQ(evaluate(in, s.portals), s.value);
            EXPECT_LE(static_cast<int>(s.portals.size()), k);
        }
    }
}

TEST(BruteForce, ThreadsGiveSameSet) {
    for (std::uint32_t seed = 0; seed < 10; ++seed) {
        Instance in = oracle::random_graph_instance(seed, 10, 6);
        BruteForceOptions one, four;
        four.threads = 4;
        auto a = solve_brute_force(in, 3, one), b = solve_brute_force(in, 3, four);
        EXPECT_EQ(a.value, b.value);
        EXPECT_EQ(a.portals, b.portals);
    }
}

TEST(BruteForce, EnumerationCap) {
    EXPECT_EQ(count_subsets(10, 3, 1000), 1u + 10 + 45 + 120);  // all subsets of size <= 3
    EXPECT_EQ(count_subsets(100, 50, 1000), 1001u);
    Instance big = gen_circle_gadget(12).instance;
    BruteForceOptions o;
    o.max_subsets = 1000;
    try {
        solve_brute_force(big, 4, o);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::too_large);
    }
}

TEST(BranchAndBound, MatchesBruteForce) {
    for (std::uint32_t seed = 0; seed < 60; ++seed) {
        Instance in = seed % 2 ? oracle::random_graph_instance(seed, 11, 7) : oracle::small_probabilistic(seed);
        for (int k = 2; k <= 4; ++k) {
            auto bb = solve_branch_and_bound(in, k);
            EXPECT_EQ(bb.value, oracle::optimum(in, k)) << "seed " << seed << " k " << k;
            EXPECT_TRUE(bb.proven_optimal);
            EXPECT_EQ(evaluate(in, bb.portals), bb.value);
        }
    }
}

TEST(BranchAndBound, Examples) {
    auto sq = solve_branch_and_bound(gen_square_gadget(), 2);
    EXPECT_EQ(sq.value, 1);
    EXPECT_TRUE(sq.proven_optimal);
    EXPECT_EQ(solve_branch_and_bound(oracle::disjoint_segments({5, 3, 1}), 2).value, 5);
    EXPECT_EQ(solve_branch_and_bound(oracle::disjoint_segments({5, 3, 1}), 5).value, 8);
}

TEST(BranchAndBound, ThreadedSearchAgrees) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        GenConfig c;
        c.seed = seed;
        c.n_seeds = 20;
        Instance in = gen_probabilistic(c);
        BranchAndBoundOptions one, three;
        three.threads = 3;
        auto a = solve_branch_and_bound(in, 6, one), b = solve_branch_and_bound(in, 6, three);
        EXPECT_TRUE(a.proven_optimal && b.proven_optimal);
        EXPECT_EQ(a.value, b.value);
    }
}

TEST(BranchAndBound, TimeLimitLeavesUnproven) {
    Instance in = gen_circle_gadget(16).instance;
    BranchAndBoundOptions o;
    o.time_limit_seconds = 0.0;
    auto s = solve_branch_and_bound(in, 8, o);
    EXPECT_FALSE(s.proven_optimal);
    EXPECT_EQ(evaluate(in, s.portals), s.value);
}

TEST(IpModel, PathExample) {
    IpModel m = build_ip(oracle::unit_path(), 2);
    EXPECT_EQ(m.x.size(), 6u);
    EXPECT_EQ(m.constraints.size(), 1u + 2 * 6);
    // x_0 <= y_0
    const auto* first = find_constraint(m, "fwd_t0_0");
    ASSERT_NE(first, nullptr);
    EXPECT_EQ(first->terms, (std::vector<std::pair<std::int64_t, int>>{{m.x_index.at({0, 0}), 1}, {0, -1}}));
    // x_1 <= y_1 + x_0
    const auto* second = find_constraint(m, "fwd_t0_1");
    ASSERT_NE(second, nullptr);
    EXPECT_EQ(second->terms,
              (std::vector<std::pair<std::int64_t, int>>{{m.x_index.at({0, 1}), 1}, {1, -1}, {m.x_index.at({0, 0}), -1}}));
    // x_5 <= y_6
    const auto* last = find_constraint(m, "bwd_t0_6");
    ASSERT_NE(last, nullptr);
    EXPECT_EQ(last->terms, (std::vector<std::pair<std::int64_t, int>>{{m.x_index.at({0, 5}), 1}, {6, -1}}));
}

TEST(IpModel, SquareCounts) {
    IpModel m = build_ip(gen_square_gadget(), 2);
    EXPECT_EQ(m.x.size(), 4u);
    EXPECT_EQ(m.node_count, 4u);
    EXPECT_EQ(m.constraints.size(), 9u);
    using P = std::vector<std::optional<Point>>;
    IpModel empty = build_ip(Instance("empty", P(3), {}, {}), 2);
    EXPECT_EQ(empty.constraints.size(), 1u);
    EXPECT_EQ(empty.x.size(), 0u);
}

TEST(IpModel, ConstraintCountFormula) {
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
        Instance in = oracle::random_graph_instance(seed, 9, 6);
        std::size_t expected = 1;
        for (const auto& t : in.trajectories()) expected += 2 * (t.nodes.size() - 1);
        EXPECT_EQ(build_ip(in, 3).constraints.size(), expected);
    }
}

TEST(LpExport, SquareText) {
    const std::string lp = export_lp(build_ip(gen_square_gadget(), 2));
    std::istringstream in(lp);
    std::string line;
    bool in_objective = false;
    int terms = 0;
    while (std::getline(in, line)) {
        if (line == "Maximize") {
            in_objective = true;
            continue;
        }
        if (line == "Subject To") break;
        if (in_objective)
            for (std::size_t pos = 0; (pos = line.find("1 x_t", pos)) != std::string::npos; ++pos) ++terms;
    }
    EXPECT_EQ(terms, 4);
    EXPECT_NE(lp.find("budget: "), std::string::npos);
    EXPECT_NE(lp.find("<= 2"), std::string::npos);
    EXPECT_NE(lp.find("Binary"), std::string::npos);
    EXPECT_NE(lp.find("End"), std::string::npos);
}

TEST(LpExport, EmptyObjectivePlaceholder) {
    using P = std::vector<std::optional<Point>>;
    const std::string lp = export_lp(build_ip(Instance("empty", P(2), {}, {}), 2));
    EXPECT_NE(lp.find("obj: 0 y_v0"), std::string::npos);
}

TEST(LpExport, ScalesNonTerminatingWeights) {
    using P = std::vector<std::optional<Point>>;
    Instance in("thirds", P(3), {Edge{0, 1, Rational(1, 3)}, Edge{1, 2, Rational(1, 7)}}, {{0, 1, 2}});
    const std::string lp = export_lp(build_ip(in, 2));
    EXPECT_NE(lp.find("scaled by 21"), std::string::npos);
    EXPECT_NE(lp.find("7 x_t0_e0"), std::string::npos);
    EXPECT_NE(lp.find("3 x_t0_e1"), std::string::npos);
}

TEST(CheckFractional, SquareHalfCorners) {
    Instance sq = gen_square_gadget();
    IpModel m = build_ip(sq, 2);
    auto c = check_fractional(m, uniform_endpoint_assignment(sq, Rational(1, 2)));
    EXPECT_TRUE(c.feasible);
    EXPECT_EQ(c.objective, 2);
    auto zero = check_fractional(m, FractionalAssignment{});
    EXPECT_TRUE(zero.feasible);
    EXPECT_EQ(zero.objective, 0);
}

TEST(CheckFractional, ReportsViolations) {
    Instance sq = gen_square_gadget();
    IpModel m = build_ip(sq, 2);
    auto over = check_fractional(m, uniform_endpoint_assignment(sq, Rational(3, 4)));
    EXPECT_FALSE(over.feasible);
    ASSERT_FALSE(over.violated.empty());
    EXPECT_EQ(over.violated.front(), "budget");

    FractionalAssignment a;
    a.x[{0, 0}] = Rational(1);
    auto no_portal = check_fractional(m, a);
    EXPECT_FALSE(no_portal.feasible);

    FractionalAssignment out_of_range;
    out_of_range.y[0] = Rational(3, 2);
    EXPECT_FALSE(check_fractional(m, out_of_range).feasible);
}

TEST(CheckFractional, IntegralAssignmentsMatchEvaluate) {
    for (std::uint32_t seed = 0; seed < 15; ++seed) {
        Instance in = oracle::random_graph_instance(seed, 7, 4);
        IpModel m = build_ip(in, 3);
        for (std::uint32_t mask = 0; mask < (1u << 7); ++mask) {
            if (std::popcount(mask) > 3) continue;
            auto portals = oracle::mask_to_nodes(mask);
            auto c = check_fractional(m, integral_assignment(in, portals));
            ASSERT_TRUE(c.feasible);
            ASSERT_EQ(c.objective, oracle::evaluate(in, portals));
        }
    }
}
