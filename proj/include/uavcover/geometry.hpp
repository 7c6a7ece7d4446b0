#pragma once

// Planar primitives shared by every placement solver: points, disks,
// boundary-inclusive coverage, convex hull and minimum enclosing circle.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace uavcover {

/// Relative tolerance used by every "is this point inside that disk" test.
inline constexpr double kRelTol = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Disk {
  Point center;
  double radius = 0.0;
};

inline double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Lexicographic order on (y, x); the tie-breaking order used by the solvers.
inline bool lower_yx(const Point& a, const Point& b) { return a.y < b.y || (a.y == b.y && a.x < b.x); }

/// Boundary inclusive, with kRelTol slack on the radius.
inline bool within_radius(const Point& center, double radius, const Point& p) {
  const double limit = radius * (1.0 + kRelTol);
  return squared_distance(center, p) <= limit * limit;
}

inline bool covers(const Disk& disk, const Point& p) { return within_radius(disk.center, disk.radius, p); }

/// Number of points lying in at least one disk.
inline std::size_t coverage_count(std::span<const Point> points, std::span<const Disk> disks) {
  std::size_t count = 0;
  for (const auto& p : points) {
    if (std::any_of(disks.begin(), disks.end(), [&](const Disk& d) { return covers(d, p); })) ++count;
  }
  return count;
}

/// Same as above for a set of centers sharing one radius.
inline std::size_t coverage_count(std::span<const Point> points, std::span<const Point> centers, double radius) {
  std::size_t count = 0;
  for (const auto& p : points) {
    if (std::any_of(centers.begin(), centers.end(), [&](const Point& c) { return within_radius(c, radius, p); }))
      ++count;
  }
  return count;
}

namespace detail {

inline double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline Disk disk_from_two(const Point& a, const Point& b) {
  const Point c{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
  return {c, std::max(distance(c, a), distance(c, b))};
}

// Circumcircle computed relative to `a` for accuracy. Collinear triples fall
// back to the circle spanned by the farthest pair.
inline Disk disk_from_three(const Point& a, const Point& b, const Point& c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  const double scale = std::max({bx * bx + by * by, cx * cx + cy * cy, 1e-300});
  if (std::abs(d) <= 1e-14 * scale) {
    Disk best = disk_from_two(a, b);
    for (const Disk& cand : {disk_from_two(a, c), disk_from_two(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const Point center{a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
  return {center, std::max({distance(center, a), distance(center, b), distance(center, c)})};
}

}  // namespace detail

/// Smallest disk containing every point (randomized incremental, expected
/// linear time). The shuffle is seeded with a constant so the result is a
/// pure function of the input.
inline Disk minimum_enclosing_circle(std::span<const Point> input) {
  if (input.empty()) throw std::invalid_argument("empty point set");
  std::vector<Point> pts(input.begin(), input.end());
  std::mt19937_64 rng(0x5eedULL + pts.size());
  std::shuffle(pts.begin(), pts.end(), rng);

  Disk d{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (covers(d, pts[i])) continue;
    d = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (covers(d, pts[j])) continue;
      d = detail::disk_from_two(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (!covers(d, pts[k])) d = detail::disk_from_three(pts[i], pts[j], pts[k]);
      }
    }
  }
  return d;
}

/// Counter-clockwise hull vertices starting from the lowest (x, y) point.
/// Duplicates are merged and collinear boundary points dropped, so a fully
/// collinear input yields its two extreme points and a single distinct point
/// yields itself.
inline std::vector<Point> convex_hull(std::span<const Point> input) {
  std::vector<Point> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;

  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && detail::cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && detail::cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace uavcover
