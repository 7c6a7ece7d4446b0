#pragma once

// Exact minimum disk cover.
//
// Any disk covering two or more points can be slid until two of them sit on
// its boundary, so an optimal cover exists whose centers are either input
// points or intersections of radius-r circles around point pairs at distance
// <= 2r. Those candidates turn the problem into set cover, which is solved by
// best-first branch and bound.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <tuple>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "uavcover/geometry.hpp"
#include "uavcover/placement.hpp"
#include "uavcover/spiral.hpp"

namespace uavcover {

namespace detail {

// Memory guard for the best-first search; exceeding it counts as running out
// of budget.
inline constexpr std::size_t kMaxSearchStates = 2'000'000;

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : b) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

inline std::size_t popcount(const Bits& b) {
  std::size_t n = 0;
  for (auto w : b) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

inline std::size_t popcount_and(const Bits& a, const Bits& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return n;
}

inline bool subset_of(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & ~b[i]) return false;
  }
  return true;
}

inline bool test_bit(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1U; }
inline void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

/// Bucket grid over points already laid out bucket by bucket (see
/// bucket_sort), so every cell is one contiguous index range. A query visits
/// the 3x3 block of cells around the query point, which holds every point
/// within one cell size of it.
class PointGrid {
 public:
  PointGrid(std::span<const Point> pts, double cell) : cell_(cell) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto [it, fresh] = ranges_.try_emplace(key(ix(pts[i].x), ix(pts[i].y)), i, i + 1);
      if (!fresh) {
        if (it->second.second != i) throw std::logic_error("PointGrid: points are not bucket-sorted");
        it->second.second = i + 1;
      }
    }
  }

  /// Orders points by (cell row, cell column, y, x).
  static void bucket_sort(std::vector<Point>& pts, double cell) {
    std::sort(pts.begin(), pts.end(), [cell](const Point& a, const Point& b) {
      const auto ka = std::make_tuple(std::floor(a.y / cell), std::floor(a.x / cell), a.y, a.x);
      const auto kb = std::make_tuple(std::floor(b.y / cell), std::floor(b.x / cell), b.y, b.x);
      return ka < kb;
    });
  }

  /// Calls f(begin, end) for each non-empty cell range near q.
  template <class F>
  void for_each_range(const Point& q, F&& f) const {
    const std::int64_t cx = ix(q.x), cy = ix(q.y);
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        auto it = ranges_.find(key(cx + dx, cy + dy));
        if (it != ranges_.end()) f(it->second.first, it->second.second);
      }
    }
  }

  template <class F>
  void for_each_near(const Point& q, F&& f) const {
    for_each_range(q, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) f(i);
    });
  }

 private:
  std::int64_t ix(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }
  static std::uint64_t key(std::int64_t x, std::int64_t y) {
    return (static_cast<std::uint64_t>(x) << 32) ^ (static_cast<std::uint64_t>(y) & 0xffffffffULL);
  }

  double cell_;
  std::unordered_map<std::uint64_t, std::pair<std::size_t, std::size_t>> ranges_;
};

struct BudgetExceeded {};

class Deadline {
 public:
  explicit Deadline(double budget_s) : budget_(budget_s) {}
  void check() const {
    if (watch_.seconds() > budget_) throw BudgetExceeded{};
  }

 private:
  Stopwatch watch_;
  double budget_;
};

/// Points of `active` (in index order) kept when they are farther than the
/// largest coverable diameter from every kept point. No disk can hold two of
/// them, so the count is a lower bound on the cover size.
inline std::size_t packing_bound(std::span<const Point> pts, const Bits& active, double radius) {
  const double limit = 2.0 * radius * (1.0 + kRelTol);
  const double limit2 = limit * limit;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!test_bit(active, i)) continue;
    const bool separated = std::all_of(kept.begin(), kept.end(), [&](std::size_t k) {
      return squared_distance(pts[i], pts[k]) > limit2;
    });
    if (separated) kept.push_back(i);
  }
  return kept.size();
}

/// Candidate centers: every point, then circle intersections of point pairs at
/// distance <= 2r. All intersections from pairs (i, j) lie on the radius-r
/// circle around point i and sweeping that circle enters and leaves each
/// partner's arc exactly at them, so only intersections where an arc entry is
/// directly followed by an exit (locally maximal coverage) are emitted; every
/// other intersection on the circle covers a subset of one of those.
inline std::vector<Point> cover_candidates(std::span<const Point> pts, double radius, const PointGrid& grid,
                                           const Deadline& deadline) {
  constexpr double kPi = 3.14159265358979323846;
  std::vector<Point> out(pts.begin(), pts.end());
  const double reach = 2.0 * radius * (1.0 + kRelTol);
  struct Event {
    double angle;
    bool enter;
    Point center;
  };
  std::vector<Event> events;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if ((i & 15) == 0) deadline.check();
    events.clear();
    const Point& a = pts[i];
    grid.for_each_near(a, [&](std::size_t j) {
      if (j == i || squared_distance(a, pts[j]) > reach * reach) return;
      const Point& b = pts[j];
      const double d = distance(a, b);
      const Point mid{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
      const double h = std::sqrt(std::max(0.0, radius * radius - d * d / 4.0));
      const double ux = -(b.y - a.y) / d, uy = (b.x - a.x) / d;
      const double theta = std::atan2(b.y - a.y, b.x - a.x);
      const double half = std::acos(std::min(1.0, d / (2.0 * radius)));
      const auto wrap = [&](double v) { return v <= -kPi ? v + 2.0 * kPi : (v > kPi ? v - 2.0 * kPi : v); };
      events.push_back({wrap(theta - half), true, {mid.x - h * ux, mid.y - h * uy}});
      events.push_back({wrap(theta + half), false, {mid.x + h * ux, mid.y + h * uy}});
    });
    std::sort(events.begin(), events.end(), [](const Event& l, const Event& r) {
      if (l.angle != r.angle) return l.angle < r.angle;
      return l.enter && !r.enter;
    });
    for (std::size_t e = 0; e < events.size(); ++e) {
      if (events[e].enter && !events[(e + 1) % events.size()].enter) out.push_back(events[e].center);
    }
  }
  return out;
}

struct CoverRows {
  std::vector<Point> centers;
  std::vector<Bits> rows;
};

/// Coverage bitset per candidate, with identical rows merged and rows that
/// are subsets of another row dropped. Survivors keep candidate order.
inline CoverRows build_rows(std::span<const Point> pts, std::span<const Point> candidates, double radius,
                            const PointGrid& grid, const Deadline& deadline) {
  const std::size_t words = (pts.size() + 63) / 64;
  const double limit = radius * (1.0 + kRelTol);
  const double limit2 = limit * limit;  // same test as within_radius
  CoverRows unique;
  std::unordered_set<Bits, BitsHash> seen;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if ((c & 255) == 0) deadline.check();
    Bits row(words, 0);
    const Point q = candidates[c];
    grid.for_each_range(q, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        const double dx = pts[i].x - q.x, dy = pts[i].y - q.y;
        row[i >> 6] |= static_cast<std::uint64_t>(dx * dx + dy * dy <= limit2) << (i & 63);
      }
    });
    if (seen.insert(row).second) {
      unique.centers.push_back(candidates[c]);
      unique.rows.push_back(std::move(row));
    }
  }

  // Dominance: visit rows largest first; a row survives unless a survivor
  // containing its rarest point also contains the whole row.
  std::vector<std::size_t> order(unique.rows.size());
  std::vector<std::size_t> sizes(unique.rows.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    order[r] = r;
    sizes[r] = popcount(unique.rows[r]);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sizes[a] > sizes[b]; });

  std::vector<std::vector<std::size_t>> kept_by_point(pts.size());
  std::vector<char> keep(unique.rows.size(), 0);
  for (std::size_t n = 0; n < order.size(); ++n) {
    if ((n & 255) == 0) deadline.check();
    const std::size_t r = order[n];
    const Bits& row = unique.rows[r];
    std::size_t pivot = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (test_bit(row, i) && (pivot == pts.size() || kept_by_point[i].size() < kept_by_point[pivot].size())) pivot = i;
    }
    const bool dominated = std::any_of(kept_by_point[pivot].begin(), kept_by_point[pivot].end(),
                                       [&](std::size_t k) { return subset_of(row, unique.rows[k]); });
    if (dominated) continue;
    keep[r] = 1;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (test_bit(row, i)) kept_by_point[i].push_back(r);
    }
  }

  CoverRows out;
  for (std::size_t r = 0; r < unique.rows.size(); ++r) {
    if (!keep[r]) continue;
    out.centers.push_back(unique.centers[r]);
    out.rows.push_back(std::move(unique.rows[r]));
  }
  return out;
}

/// Repeatedly take the row covering the most uncovered points (lowest index
/// on ties).
inline std::vector<std::size_t> greedy_cover(const CoverRows& rows, Bits uncovered, const Deadline& deadline) {
  std::vector<std::size_t> chosen;
  while (popcount(uncovered) > 0) {
    deadline.check();
    std::size_t best = 0, best_gain = 0;
    for (std::size_t r = 0; r < rows.rows.size(); ++r) {
      const std::size_t gain = popcount_and(rows.rows[r], uncovered);
      if (gain > best_gain) {
        best_gain = gain;
        best = r;
      }
    }
    if (best_gain == 0) break;
    for (std::size_t w = 0; w < uncovered.size(); ++w) uncovered[w] &= ~rows.rows[best][w];
    chosen.push_back(best);
  }
  return chosen;
}

}  // namespace detail

/// Minimum number of radius-r disks covering every point. When the time
/// budget runs out the best cover found so far is returned with
/// `optimal == false`; it is never worse than the spiral solution.
inline PlacementSolution solve_exact(std::span<const Point> points, double radius, const SolverConfig& config = {}) {
  using namespace detail;
  check_radius(radius);
  config.check();
  Stopwatch timer;
  PlacementSolution sol;
  sol.algorithm = Algorithm::exact;
  sol.radius = radius;

  const auto finish = [&](std::vector<Point> centers, bool optimal) {
    sol.centers = std::move(centers);
    sol.optimal = optimal;
    sol.wall_time_s = timer.seconds();
    sol.covered_count = coverage_count(points, sol.centers, radius);
    return sol;
  };

  if (points.empty()) return finish({}, true);

  const double cell = 2.0 * radius * (1.0 + 1e-6);
  std::vector<Point> pts(points.begin(), points.end());
  PointGrid::bucket_sort(pts, cell);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const Disk mec = minimum_enclosing_circle(pts);
  if (mec.radius <= radius) return finish({mec.center}, true);

  const Deadline deadline(config.time_budget_s);
  const std::size_t words = (pts.size() + 63) / 64;
  Bits all(words, 0);
  for (std::size_t i = 0; i < pts.size(); ++i) set_bit(all, i);

  std::vector<Point> best = solve_spiral(pts, radius).centers;
  const std::size_t root_bound = std::max<std::size_t>(2, packing_bound(pts, all, radius));
  if (root_bound >= best.size()) return finish(std::move(best), true);

  try {
    const PointGrid grid(pts, cell);
    const auto candidates = cover_candidates(pts, radius, grid, deadline);
    const CoverRows rows = build_rows(pts, candidates, radius, grid, deadline);

    const auto greedy = greedy_cover(rows, all, deadline);
    if (greedy.size() < best.size()) {
      best.clear();
      for (auto r : greedy) best.push_back(rows.centers[r]);
    }
    if (root_bound >= best.size()) return finish(std::move(best), true);

    std::size_t max_row = 0;
    for (const auto& row : rows.rows) max_row = std::max(max_row, popcount(row));
    std::vector<std::vector<std::size_t>> covering(pts.size());
    for (std::size_t r = 0; r < rows.rows.size(); ++r) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (test_bit(rows.rows[r], i)) covering[i].push_back(r);
      }
    }

    struct Node {
      Bits uncovered;
      std::vector<std::uint32_t> chosen;
      std::size_t bound;
      std::uint64_t seq;
    };
    // Smallest bound first; deeper nodes first on ties, then FIFO.
    const auto worse = [](const Node& a, const Node& b) {
      if (a.bound != b.bound) return a.bound > b.bound;
      if (a.chosen.size() != b.chosen.size()) return a.chosen.size() < b.chosen.size();
      return a.seq > b.seq;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
    std::unordered_map<Bits, std::size_t, BitsHash> reached;

    const auto lower_bound = [&](const Bits& uncovered) {
      const std::size_t left = popcount(uncovered);
      if (left == 0) return std::size_t{0};
      return std::max((left + max_row - 1) / max_row, packing_bound(pts, uncovered, radius));
    };

    std::uint64_t seq = 0;
    open.push({all, {}, root_bound, seq++});
    reached.emplace(all, 0);
    std::size_t expanded = 0;
    while (!open.empty()) {
      if ((++expanded & 63) == 0) deadline.check();
      Node node = open.top();
      open.pop();
      if (node.bound >= best.size()) break;
      if (popcount(node.uncovered) == 0) {
        best.clear();
        for (auto r : node.chosen) best.push_back(rows.centers[r]);
        continue;
      }

      // Branch on the uncovered point with the fewest covering rows.
      std::size_t pivot = pts.size();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (test_bit(node.uncovered, i) && (pivot == pts.size() || covering[i].size() < covering[pivot].size()))
          pivot = i;
      }
      for (auto r : covering[pivot]) {
        Bits next = node.uncovered;
        for (std::size_t w = 0; w < words; ++w) next[w] &= ~rows.rows[r][w];
        const std::size_t depth = node.chosen.size() + 1;
        auto [it, fresh] = reached.try_emplace(next, depth);
        if (!fresh) {
          if (it->second <= depth) continue;
          it->second = depth;
        }
        const std::size_t bound = depth + lower_bound(next);
        if (bound >= best.size()) continue;
        auto chosen = node.chosen;
        chosen.push_back(static_cast<std::uint32_t>(r));
        open.push({std::move(next), std::move(chosen), bound, seq++});
      }
      if (reached.size() > kMaxSearchStates) throw BudgetExceeded{};
    }
  } catch (const BudgetExceeded&) {
    return finish(std::move(best), false);
  }
  return finish(std::move(best), true);
}

}  // namespace uavcover
