#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavcover/geometry.hpp"
#include "uavcover/grid.hpp"

namespace uavcover {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Square area [0, side]^2 split into grid_n x grid_n segments.
struct AreaSpec {
  double side = 256.0;
  std::size_t grid_n = 256;

  double cell_size() const { return side / static_cast<double>(grid_n); }

  void check() const {
    if (!(side > 0.0) || !std::isfinite(side)) throw ConfigError("area side must be positive");
    if (grid_n < 2) throw ConfigError("grid_n must be at least 2");
  }
};

/// Coverage ratio R = side / r.
struct CoverageSpec {
  double ratio = 2.0;
  double radius = 128.0;

  static CoverageSpec from_ratio(const AreaSpec& area, double ratio) {
    if (!(ratio > 0.0) || !std::isfinite(ratio)) throw ConfigError("coverage ratio must be positive");
    return {ratio, area.side / ratio};
  }
};

/// Thomas-style cluster process: a handful of Gaussian clusters with
/// Dirichlet-uniform weights plus a fraction of uniform outliers.
struct ScenarioParams {
  std::size_t ue_count = 400;
  int min_clusters = 3;
  int max_clusters = 8;
  double sigma_fraction = 0.05;  // cluster spread as a fraction of the side
  double outlier_fraction = 0.05;

  void check() const {
    if (!(sigma_fraction > 0.0)) throw ConfigError("cluster spread must be positive");
    if (!(outlier_fraction >= 0.0 && outlier_fraction <= 1.0))
      throw ConfigError("outlier fraction must lie in [0, 1]");
    if (min_clusters < 1 || max_clusters < min_clusters) throw ConfigError("invalid cluster count range");
  }
};

struct UEScenario {
  std::vector<Point> points;
  std::uint64_t seed = 0;
  ScenarioParams params;
  AreaSpec area;
};

inline UEScenario generate_scenario(const AreaSpec& area, const ScenarioParams& params, std::uint64_t seed) {
  area.check();
  params.check();
  UEScenario out{{}, seed, params, area};
  const std::size_t p = params.ue_count;
  if (p == 0) return out;
  out.points.reserve(p);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, area.side);
  std::uniform_int_distribution<int> cluster_count(params.min_clusters, params.max_clusters);
  std::exponential_distribution<double> gamma1(1.0);
  std::normal_distribution<double> offset(0.0, params.sigma_fraction * area.side);

  const int nc = cluster_count(rng);
  std::vector<Point> centers(nc);
  std::vector<double> weights(nc);
  for (int c = 0; c < nc; ++c) {
    centers[c].x = coord(rng);
    centers[c].y = coord(rng);
    weights[c] = gamma1(rng);
  }
  std::discrete_distribution<int> pick(weights.begin(), weights.end());

  const auto outliers = static_cast<std::size_t>(std::llround(params.outlier_fraction * static_cast<double>(p)));
  const auto inside = [&](double v) { return v >= 0.0 && v <= area.side; };
  for (std::size_t k = 0; k < p - outliers; ++k) {
    const Point& c = centers[pick(rng)];
    Point q{c.x + offset(rng), c.y + offset(rng)};
    for (int attempt = 0; attempt < 64 && !(inside(q.x) && inside(q.y)); ++attempt) {
      q = {c.x + offset(rng), c.y + offset(rng)};
    }
    q.x = std::clamp(q.x, 0.0, area.side);
    q.y = std::clamp(q.y, 0.0, area.side);
    out.points.push_back(q);
  }
  for (std::size_t k = 0; k < outliers; ++k) {
    const double x = coord(rng);
    out.points.push_back({x, coord(rng)});
  }
  return out;
}

/// Grid index of a coordinate; the closed upper edge maps into the last cell.
inline std::size_t cell_index(double v, const AreaSpec& area) {
  if (!(v >= 0.0 && v <= area.side)) throw std::out_of_range("coordinate " + std::to_string(v) + " outside area");
  const auto idx = static_cast<std::size_t>(std::floor(v / area.side * static_cast<double>(area.grid_n)));
  return std::min(idx, area.grid_n - 1);
}

inline GridMatrix discretize(std::span<const Point> points, const AreaSpec& area) {
  area.check();
  auto m = GridMatrix::square(area.grid_n, CellKind::integer);
  for (const auto& p : points) m(cell_index(p.y, area), cell_index(p.x, area)) += 1.0;
  return m;
}

inline GridMatrix discretize(const UEScenario& scenario, const AreaSpec& area) {
  return discretize(std::span<const Point>(scenario.points), area);
}

inline Point cell_center(double col, double row, const AreaSpec& area) {
  const double h = area.cell_size();
  return {(col + 0.5) * h, (row + 0.5) * h};
}

enum class MassMode {
  per_unit,  // one point per unit of (rounded) cell mass
  per_cell   // one point per cell at or above a threshold
};

inline std::vector<Point> grid_to_points(const GridMatrix& m, const AreaSpec& area, MassMode mode = MassMode::per_unit,
                                         double threshold = 0.5) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      const Point c = cell_center(static_cast<double>(j), static_cast<double>(i), area);
      if (mode == MassMode::per_cell) {
        if (v >= threshold) out.push_back(c);
      } else {
        for (long long u = std::llround(v); u > 0; --u) out.push_back(c);
      }
    }
  }
  return out;
}

}  // namespace uavcover
