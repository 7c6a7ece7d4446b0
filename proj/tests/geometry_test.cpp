#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "uavcover/geometry.hpp"

using namespace uavcover;

TEST(MinimumEnclosingCircle, SinglePoint) {
  const std::vector<Point> pts{{1, 1}};
  const Disk d = minimum_enclosing_circle(pts);
  EXPECT_EQ(d.center, (Point{1, 1}));
  EXPECT_EQ(d.radius, 0.0);
}

TEST(MinimumEnclosingCircle, TwoPointsGiveDiameter) {
  const std::vector<Point> pts{{0, 0}, {2, 0}};
  const Disk d = minimum_enclosing_circle(pts);
  EXPECT_NEAR(d.center.x, 1.0, 1e-12);
  EXPECT_NEAR(d.center.y, 0.0, 1e-12);
  EXPECT_NEAR(d.radius, 1.0, 1e-12);
}

TEST(MinimumEnclosingCircle, ObtuseTriangleUsesLongestSide) {
  const std::vector<Point> pts{{0, 0}, {1, 0}, {0.5, 0.5}};
  const Disk d = minimum_enclosing_circle(pts);
  EXPECT_NEAR(d.center.x, 0.5, 1e-12);
  EXPECT_NEAR(d.center.y, 0.0, 1e-12);
  EXPECT_NEAR(d.radius, 0.5, 1e-12);
}

TEST(MinimumEnclosingCircle, EmptyThrows) {
  const std::vector<Point> pts;
  try {
    minimum_enclosing_circle(pts);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "empty point set");
  }
}

TEST(MinimumEnclosingCircle, CollinearAndDuplicatePoints) {
  const std::vector<Point> line{{0, 0}, {1, 0}, {3, 0}, {2, 0}, {3, 0}};
  const Disk d = minimum_enclosing_circle(line);
  EXPECT_NEAR(d.center.x, 1.5, 1e-12);
  EXPECT_NEAR(d.radius, 1.5, 1e-12);
  const std::vector<Point> same(5, Point{2, 2});
  EXPECT_NEAR(minimum_enclosing_circle(same).radius, 0.0, 1e-12);
}

TEST(MinimumEnclosingCircle, MatchesBruteForceOracle) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 50; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      const auto pts = oracle::uniform_points(n, 100.0, rng());
      const Disk got = minimum_enclosing_circle(pts);
      const Disk want = oracle::brute_force_mec(pts);
      ASSERT_NEAR(got.radius, want.radius, 1e-9 * (1 + want.radius)) << "n=" << n;
      for (const auto& p : pts) ASSERT_TRUE(oracle::inside(got, p));
    }
  }
}

TEST(MinimumEnclosingCircle, RadiusMonotoneUnderInsertion) {
  auto pts = oracle::uniform_points(60, 10.0, 5);
  double prev = 0.0;
  for (std::size_t n = 1; n <= pts.size(); ++n) {
    const double r = minimum_enclosing_circle(std::span<const Point>(pts.data(), n)).radius;
    EXPECT_GE(r, prev - 1e-12);
    prev = r;
  }
}

TEST(MinimumEnclosingCircle, OrderInvariant) {
  auto pts = oracle::uniform_points(40, 10.0, 6);
  const double r = minimum_enclosing_circle(pts).radius;
  std::mt19937_64 rng(1);
  for (int k = 0; k < 10; ++k) {
    std::shuffle(pts.begin(), pts.end(), rng);
    EXPECT_NEAR(minimum_enclosing_circle(pts).radius, r, 1e-12);
  }
}

TEST(ConvexHull, Triangle) {
  const std::vector<Point> pts{{0, 0}, {1, 0}, {0, 1}};
  const auto h = convex_hull(pts);
  ASSERT_EQ(h.size(), 3u);
  EXPECT_EQ(h[0], (Point{0, 0}));
  EXPECT_EQ(h[1], (Point{1, 0}));
  EXPECT_EQ(h[2], (Point{0, 1}));
}

TEST(ConvexHull, InteriorPointDropped) {
  const std::vector<Point> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  const auto h = convex_hull(pts);
  EXPECT_EQ(h, (std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
}

TEST(ConvexHull, CollinearReducesToEndpoints) {
  const std::vector<Point> pts{{0, 0}, {1, 0}, {2, 0}};
  EXPECT_EQ(convex_hull(pts), (std::vector<Point>{{0, 0}, {2, 0}}));
}

TEST(ConvexHull, DegenerateInputs) {
  EXPECT_TRUE(convex_hull(std::vector<Point>{}).empty());
  EXPECT_EQ(convex_hull(std::vector<Point>{{3, 3}, {3, 3}}), (std::vector<Point>{{3, 3}}));
}

TEST(ConvexHull, RandomSetsAreConvexCcwAndEnclosing) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto pts = oracle::uniform_points(3 + seed * 3, 50.0, seed);
    const auto h = convex_hull(pts);
    ASSERT_GE(h.size(), 3u);
    for (std::size_t i = 0; i < h.size(); ++i) {
      const Point& a = h[i];
      const Point& b = h[(i + 1) % h.size()];
      for (const auto& p : pts) {
        const double c = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        ASSERT_GE(c, -1e-9);
      }
    }
  }
}

TEST(Coverage, NoDisksCoverNothing) {
  const std::vector<Point> pts{{0, 0}, {1, 1}, {2, 2}};
  EXPECT_EQ(coverage_count(pts, std::vector<Disk>{}), 0u);
}

TEST(Coverage, BoundaryIsInclusive) {
  const std::vector<Point> pts{{3, 4}};
  const std::vector<Disk> disks{{{0, 0}, 5.0}};
  EXPECT_EQ(coverage_count(pts, disks), 1u);
  EXPECT_TRUE(within_radius({0, 0}, 5.0, {5, 0}));
  EXPECT_FALSE(within_radius({0, 0}, 5.0, {5.001, 0}));
}

TEST(Coverage, MatchesPerPointScan) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto pts = oracle::uniform_points(10, 10.0, seed);
    const auto centers = oracle::uniform_points(2, 10.0, seed + 1000);
    const std::vector<Disk> disks{{centers[0], 3.0}, {centers[1], 3.0}};
    EXPECT_EQ(coverage_count(pts, disks), oracle::covered(pts, centers, 3.0));
    EXPECT_EQ(coverage_count(pts, centers, 3.0), oracle::covered(pts, centers, 3.0));
  }
}

TEST(Coverage, InvariantUnderDiskOrder) {
  const auto pts = oracle::uniform_points(100, 10.0, 3);
  auto centers = oracle::uniform_points(6, 10.0, 4);
  const auto base = coverage_count(pts, centers, 2.0);
  std::reverse(centers.begin(), centers.end());
  EXPECT_EQ(coverage_count(pts, centers, 2.0), base);
}
