#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "uavcover/geometry.hpp"
#include "uavcover/placement.hpp"

namespace uavcover {

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  std::uint32_t raw[2];
  seq.generate(raw, raw + 2);
  return (static_cast<std::uint64_t>(raw[0]) << 32) | raw[1];
}

inline std::size_t nearest(std::span<const Point> centers, const Point& p) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double d = squared_distance(centers[c], p);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

// k-means++ seeding. When every remaining point coincides with a chosen
// center the next one is drawn uniformly.
inline std::vector<Point> seed_plus_plus(std::span<const Point> pts, std::size_t k, std::mt19937_64& rng) {
  std::vector<Point> centers;
  centers.push_back(pts[std::uniform_int_distribution<std::size_t>(0, pts.size() - 1)(rng)]);
  std::vector<double> d2(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) d2[i] = squared_distance(pts[i], centers[0]);
  while (centers.size() < k) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    std::size_t pick;
    if (total > 0.0) {
      pick = std::discrete_distribution<std::size_t>(d2.begin(), d2.end())(rng);
    } else {
      pick = std::uniform_int_distribution<std::size_t>(0, pts.size() - 1)(rng);
    }
    centers.push_back(pts[pick]);
    for (std::size_t i = 0; i < pts.size(); ++i) d2[i] = std::min(d2[i], squared_distance(pts[i], pts[pick]));
  }
  return centers;
}

/// Lloyd iterations until no centroid moves more than 1e-9 or the cap hits.
inline std::vector<Point> lloyd(std::span<const Point> pts, std::vector<Point> centers, int max_iter) {
  std::vector<std::size_t> label(pts.size());
  for (int it = 0; it < max_iter; ++it) {
    for (std::size_t i = 0; i < pts.size(); ++i) label[i] = nearest(centers, pts[i]);
    std::vector<Point> sum(centers.size());
    std::vector<std::size_t> count(centers.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      sum[label[i]].x += pts[i].x;
      sum[label[i]].y += pts[i].y;
      ++count[label[i]];
    }
    double moved = 0.0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      if (count[c] == 0) continue;  // empty cluster keeps its centroid
      const Point next{sum[c].x / static_cast<double>(count[c]), sum[c].y / static_cast<double>(count[c])};
      moved = std::max(moved, distance(next, centers[c]));
      centers[c] = next;
    }
    if (moved <= 1e-9) break;
  }
  return centers;
}

}  // namespace detail

/// K-means baseline: k = 1, 2, ... with k-means++ seeded Lloyd restarts; the
/// first k for which some restart puts every point within r of its nearest
/// centroid is accepted. k = p always succeeds.
inline PlacementSolution solve_kmeans(std::span<const Point> points, double radius, const SolverConfig& config = {}) {
  check_radius(radius);
  config.check();
  Stopwatch timer;
  PlacementSolution sol;
  sol.algorithm = Algorithm::kmeans;
  sol.radius = radius;

  for (std::size_t k = 1; k <= points.size() && sol.centers.empty(); ++k) {
    for (int restart = 0; restart < config.kmeans_restarts; ++restart) {
      std::mt19937_64 rng(detail::mix_seed(config.rng_seed, k, static_cast<std::uint64_t>(restart)));
      auto centers = detail::lloyd(points, detail::seed_plus_plus(points, k, rng), config.kmeans_max_iter);
      const bool covering = std::all_of(points.begin(), points.end(), [&](const Point& p) {
        return within_radius(centers[detail::nearest(centers, p)], radius, p);
      });
      if (covering) {
        sol.centers = std::move(centers);
        break;
      }
    }
  }

  sol.wall_time_s = timer.seconds();
  sol.covered_count = coverage_count(points, sol.centers, radius);
  return sol;
}

}  // namespace uavcover
