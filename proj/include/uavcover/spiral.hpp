#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "uavcover/geometry.hpp"
#include "uavcover/placement.hpp"

namespace uavcover {

/// Quasi-optimal sequential cover that peels the uncovered set from its
/// boundary inward. Each step starts from a hull vertex of the uncovered
/// points (lowest y first, then the vertex nearest the previous center),
/// grows a group with nearby points while its enclosing circle fits in r and
/// places a UAV at that circle's center.
inline PlacementSolution solve_spiral(std::span<const Point> points, double radius) {
  check_radius(radius);
  Stopwatch timer;
  PlacementSolution sol;
  sol.algorithm = Algorithm::spiral;
  sol.radius = radius;

  std::vector<Point> uncovered(points.begin(), points.end());
  std::optional<Point> previous;
  std::vector<Point> group;
  std::vector<std::pair<double, Point>> nearby;

  while (!uncovered.empty()) {
    const auto hull = convex_hull(uncovered);
    Point seed = hull.front();
    if (!previous) {
      seed = *std::min_element(hull.begin(), hull.end(), lower_yx);
    } else {
      double best = squared_distance(seed, *previous);
      for (const auto& v : hull) {
        const double d = squared_distance(v, *previous);
        if (d < best || (d == best && lower_yx(v, seed))) {
          best = d;
          seed = v;
        }
      }
    }

    nearby.clear();
    bool seed_skipped = false;
    for (const auto& q : uncovered) {
      if (!seed_skipped && q == seed) {
        seed_skipped = true;
        continue;
      }
      const double d = squared_distance(seed, q);
      if (d <= 4.0 * radius * radius) nearby.emplace_back(d, q);
    }
    std::sort(nearby.begin(), nearby.end(), [](const auto& a, const auto& b) {
      return a.first < b.first || (a.first == b.first && lower_yx(a.second, b.second));
    });

    group.assign(1, seed);
    Disk disk{seed, 0.0};
    for (const auto& [d, q] : nearby) {
      if (covers(disk, q)) {
        group.push_back(q);
        continue;
      }
      group.push_back(q);
      const Disk grown = minimum_enclosing_circle(group);
      if (grown.radius <= radius) {
        disk = grown;
      } else {
        group.pop_back();
      }
    }

    const Point center = disk.center;
    sol.centers.push_back(center);
    std::erase_if(uncovered, [&](const Point& q) { return within_radius(center, radius, q); });
    previous = center;
  }

  sol.wall_time_s = timer.seconds();
  sol.covered_count = coverage_count(points, sol.centers, radius);
  return sol;
}

}  // namespace uavcover
