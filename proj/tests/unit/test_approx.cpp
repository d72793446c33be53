#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace tcp;

namespace {

Rational top_weights(const Instance& in, int count) {
    std::vector<Rational> w;
    for (const auto& t : in.trajectories()) w.push_back(in.trajectory_weight(t.id));
    std::sort(w.rbegin(), w.rend());
    Rational sum = 0;
    for (int i = 0; i < count && i < static_cast<int>(w.size()); ++i) sum += w[static_cast<std::size_t>(i)];
    return sum;
}

}  // namespace

TEST(OrientationApprox, Square) {
    auto s = approx_orientation(gen_square_gadget(), 2);
    EXPECT_EQ(s.value, 1);
    EXPECT_FALSE(s.proven_optimal);
}

TEST(OrientationApprox, SingleClassIsExact) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        auto iv = gen_1d(6, 0, 30, seed);
        Instance in = intervals_to_instance(iv);
        for (int k = 2; k <= 5; ++k) {
            auto s = approx_orientation(in, k);
            EXPECT_TRUE(s.proven_optimal);
            EXPECT_EQ(s.value, oracle::optimum(in, k));
        }
    }
    // Several parallel lines share the budget.
    Instance rows = oracle::disjoint_segments({5, 3, 1});
    EXPECT_EQ(approx_orientation(rows, 4).value, 8);
    EXPECT_EQ(approx_orientation(rows, 6).value, 9);
}

TEST(OrientationApprox, AxisParallelHalfOfOptimum) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Instance in = gen_axis_parallel(5, seed);
        for (int k : {2, 3, 4}) {
            const Rational opt = solve_brute_force(in, k).value;
            auto s = approx_orientation(in, k);
            EXPECT_GE(2 * s.value, opt) << "seed " << seed << " k " << k;
            EXPECT_EQ(evaluate(in, s.portals), s.value);
            EXPECT_LE(static_cast<int>(s.portals.size()), k);
        }
    }
}

TEST(OrientationApprox, NeedsCollinearTrajectories) {
    Instance circle = gen_circle_gadget(8).instance;
    EXPECT_NO_THROW(approx_orientation(circle, 2));
    using P = std::vector<std::optional<Point>>;
    Instance bent("bent", P{Point{Rational(0), Rational(0)}, Point{Rational(1), Rational(0)}, Point{Rational(1), Rational(1)}},
                  {Edge{0, 1, Rational(1)}, Edge{1, 2, Rational(1)}}, {{0, 1, 2}});
    EXPECT_THROW(approx_orientation(bent, 2), error);
    EXPECT_THROW(approx_orientation(gen_square_gadget(), 1), error);
}

TEST(DepthGreedy, Examples) {
    Instance rows = oracle::disjoint_segments({5, 3, 1});
    EXPECT_EQ(approx_depth_greedy(rows, 4).value, 8);
    EXPECT_EQ(approx_depth_greedy(rows, 2).value, 5);
    EXPECT_EQ(approx_depth_greedy(gen_square_gadget(), 2).value, 1);
    EXPECT_THROW(approx_depth_greedy(rows, 1), error);
}

TEST(DepthGreedy, CapturesHeaviestTrajectories) {
    for (std::uint32_t seed = 0; seed < 40; ++seed) {
        Instance in = oracle::random_graph_instance(seed, 10, 6);
        for (int k = 2; k <= 6; ++k) {
            auto s = approx_depth_greedy(in, k);
            EXPECT_GE(s.value, top_weights(in, k / 2));
            EXPECT_LE(static_cast<int>(s.portals.size()), k);
        }
    }
}

TEST(DepthGreedy, RatioBound) {
    for (std::uint32_t seed = 0; seed < 40; ++seed) {
        Instance in = seed % 2 ? oracle::random_graph_instance(seed, 9, 5) : oracle::small_probabilistic(seed);
        const int delta = oracle::depth(in);
        for (int k = 2; k <= 5; ++k) {
            const Rational opt = oracle::optimum(in, k);
            const Rational value = approx_depth_greedy(in, k).value;
            EXPECT_GE(value * ((k * delta) / 2), opt * (k / 2)) << "seed " << seed << " k " << k;
        }
    }
}
