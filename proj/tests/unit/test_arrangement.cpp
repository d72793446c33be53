#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace tcp;

namespace {

Point pt(long x, long y) { return {Rational(x), Rational(y)}; }
Segment seg(long x1, long y1, long x2, long y2) { return {pt(x1, y1), pt(x2, y2)}; }

std::vector<Rational> sorted_weights(const Instance& in) {
    std::vector<Rational> w;
    for (const auto& e : in.edges()) w.push_back(e.weight);
    std::sort(w.begin(), w.end());
    return w;
}

}  // namespace

TEST(SegmentIntersection, Examples) {
    auto x = segment_intersection(seg(0, 0, 1, 1), seg(0, 1, 1, 0));
    ASSERT_TRUE(std::holds_alternative<Point>(x));
    EXPECT_EQ(std::get<Point>(x), (Point{Rational(1, 2), Rational(1, 2)}));

    auto o = segment_intersection(seg(0, 0, 2, 0), seg(1, 0, 3, 0));
    ASSERT_TRUE(std::holds_alternative<Segment>(o));
    EXPECT_EQ(std::get<Segment>(o).p, pt(1, 0));
    EXPECT_EQ(std::get<Segment>(o).q, pt(2, 0));

    EXPECT_TRUE(std::holds_alternative<std::monostate>(segment_intersection(seg(0, 0, 1, 0), seg(0, 1, 1, 1))));
    auto touch = segment_intersection(seg(0, 0, 1, 0), seg(1, 0, 1, 5));
    ASSERT_TRUE(std::holds_alternative<Point>(touch));
    EXPECT_EQ(std::get<Point>(touch), pt(1, 0));
    auto end_to_end = segment_intersection(seg(0, 0, 1, 0), seg(1, 0, 2, 0));
    ASSERT_TRUE(std::holds_alternative<Point>(end_to_end));
    EXPECT_TRUE(std::holds_alternative<std::monostate>(segment_intersection(seg(0, 0, 1, 0), seg(2, 0, 3, 0))));
}

TEST(SegmentIntersection, PointsLieOnBothCarriers) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-20, 20);
    for (int i = 0; i < 500; ++i) {
        Segment a = seg(c(rng), c(rng), c(rng), c(rng)), b = seg(c(rng), c(rng), c(rng), c(rng));
        if (a.p == a.q || b.p == b.q) continue;
        auto r = segment_intersection(a, b);
        if (!std::holds_alternative<Point>(r)) continue;
        const Point& p = std::get<Point>(r);
        for (const Segment& s : {a, b})
            EXPECT_EQ((s.q.x - s.p.x) * (p.y - s.p.y) - (s.q.y - s.p.y) * (p.x - s.p.x), 0);
    }
}

TEST(Arrangement, SquareAndDiagonals) {
    Instance sq = build_arrangement({seg(0, 0, 1, 0), seg(1, 0, 1, 1), seg(1, 1, 0, 1), seg(0, 1, 0, 0)});
    EXPECT_EQ(sq.node_count(), 4u);
    EXPECT_EQ(sq.edges().size(), 4u);
    EXPECT_EQ(sq.trajectory_count(), 4u);
    for (const auto& t : sq.trajectories()) EXPECT_EQ(t.nodes.size(), 2u);
    EXPECT_EQ(sq.total_weight(), 4);

    Instance diag = build_arrangement({seg(0, 0, 1, 1), seg(0, 1, 1, 0)});
    EXPECT_EQ(diag.node_count(), 5u);
    EXPECT_EQ(diag.edges().size(), 4u);
    ASSERT_EQ(diag.trajectory_count(), 2u);
    for (const auto& t : diag.trajectories()) EXPECT_EQ(t.nodes.size(), 3u);
    // Both halves of a diagonal carry exactly half its nominal length.
    EXPECT_EQ(diag.edge_weight(0, 0), diag.edge_weight(0, 1));
}

TEST(Arrangement, RationalLengthsAreExact) {
    Instance in = build_arrangement({seg(0, 0, 3, 4)});
    EXPECT_EQ(in.total_weight(), 5);
    Instance irr = build_arrangement({seg(0, 0, 1, 1)});
    EXPECT_NEAR(irr.total_weight().get_d(), std::sqrt(2.0), 1e-15);
}

TEST(Arrangement, OverlapsShareEdges) {
    Instance in = build_arrangement({seg(0, 0, 2, 0), seg(1, 0, 3, 0)});
    EXPECT_EQ(in.node_count(), 4u);
    EXPECT_EQ(in.edges().size(), 3u);
    EXPECT_EQ(in.total_weight(), 4);
}

TEST(Arrangement, ZeroLengthRejected) {
    EXPECT_THROW(build_arrangement({seg(1, 1, 1, 1)}), error);
    EXPECT_THROW(build_arrangement({}), error);
}

TEST(Arrangement, CircleK4) {
    auto g = gen_circle_gadget(4);
    EXPECT_EQ(g.instance.trajectory_count(), 6u);
    EXPECT_EQ(g.instance.node_count(), 5u);
    int split = 0;
    for (const auto& t : g.instance.trajectories()) split += t.nodes.size() == 3;
    EXPECT_EQ(split, 2);
}

TEST(Arrangement, SubdivisionKeepsSegmentWeight) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> c(0, 30);
    std::vector<Segment> segs;
    while (segs.size() < 12) {
        Segment s = seg(c(rng), c(rng), c(rng), c(rng));
        if (s.p == s.q) continue;
        bool overlaps = false;
        for (const auto& t : segs) overlaps |= std::holds_alternative<Segment>(segment_intersection(s, t));
        if (!overlaps) segs.push_back(s);
    }
    Instance in = build_arrangement(segs);
    for (std::size_t i = 0; i < segs.size(); ++i) {
        Instance alone = build_arrangement({segs[i]});
        EXPECT_EQ(in.trajectory_weight(static_cast<TrajId>(i)), alone.total_weight());
    }
}

TEST(Arrangement, PermutationInvariant) {
    std::vector<Segment> segs{seg(0, 0, 4, 4), seg(0, 4, 4, 0), seg(0, 2, 4, 2), seg(2, 0, 2, 5), seg(1, 0, 1, 3)};
    Instance a = build_arrangement(segs);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(segs.begin(), segs.end(), rng);
        Instance b = build_arrangement(segs);
        EXPECT_EQ(a.node_count(), b.node_count());
        EXPECT_EQ(sorted_weights(a), sorted_weights(b));
        EXPECT_EQ(a.total_weight(), b.total_weight());
    }
}

TEST(Snap, NearestGridNode) {
    auto r = snap_polylines({{Point{Rational(1, 10), Rational(1, 10)}, Point{Rational(9, 10), Rational(2, 10)}}}, Rational(1));
    EXPECT_EQ(r.dropped, 0u);
    ASSERT_EQ(r.instance.trajectory_count(), 1u);
    EXPECT_EQ(r.instance.total_weight(), 1);
    EXPECT_EQ(*r.instance.point(r.instance.trajectory(0).nodes.front()), pt(0, 0));
    EXPECT_EQ(*r.instance.point(r.instance.trajectory(0).nodes.back()), pt(1, 0));
}

TEST(Snap, TiesGoToSmallerNode) {
    auto r = snap_polylines({{Point{Rational(1, 2), Rational(0)}, Point{Rational(3), Rational(0)}}}, Rational(1));
    EXPECT_EQ(*r.instance.point(r.instance.trajectory(0).nodes.front()), pt(0, 0));
}

TEST(Snap, DropsDegenerateTraces) {
    auto r = snap_polylines({{Point{Rational(1, 10), Rational(0)}, Point{Rational(2, 10), Rational(1, 10)}},
                             {pt(0, 0), pt(2, 0)}},
                            Rational(1));
    EXPECT_EQ(r.dropped, 1u);
    EXPECT_EQ(r.instance.trajectory_count(), 1u);
}

TEST(Snap, SplitsAtRevisit) {
    // Figure eight through the origin.
    auto r = snap_polylines({{pt(0, 0), pt(1, 1), pt(2, 0), pt(1, -1), pt(0, 0), pt(-1, 1), pt(-2, 0), pt(-1, -1)}},
                            Rational(1));
    EXPECT_EQ(r.instance.trajectory_count(), 2u);
    for (const auto& t : r.instance.trajectories()) {
        std::set<NodeId> seen(t.nodes.begin(), t.nodes.end());
        EXPECT_EQ(seen.size(), t.nodes.size());
    }
}
