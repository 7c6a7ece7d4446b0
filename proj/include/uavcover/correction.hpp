#pragma once

// De-blurring of generator output: every blurred group of UAV cells within
// epsilon of a pivot is replaced by the group's mean position.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "uavcover/geometry.hpp"
#include "uavcover/grid.hpp"
#include "uavcover/scenario.hpp"

namespace uavcover {

struct CorrectionConfig {
  double epsilon = 2.0;  // grid cells
  double theta = 0.5;    // binarization threshold for real-valued matrices
  // When set, pivots are taken in a seeded random order instead of row-major.
  std::optional<std::uint64_t> shuffle_seed;

  void check() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in [0, 1]");
  }
};

/// Grid coordinates (x = column, y = row) of occupied cells in row-major
/// order. Integer matrices count a cell as occupied at >= 1, real ones at
/// >= theta.
inline std::vector<Point> sparse_to_coords(const GridMatrix& m, double theta = 0.5) {
  const double cut = m.kind() == CellKind::integer ? 1.0 : theta;
  std::vector<Point> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) >= cut) out.push_back({static_cast<double>(j), static_cast<double>(i)});
    }
  }
  return out;
}

/// Pop the first remaining coordinate, pull every remaining coordinate at
/// distance < epsilon from it, and emit the mean of the pivot and the pulled
/// ones. Quadratic in the input size.
inline std::vector<Point> correct(std::span<const Point> coords, double epsilon,
                                  std::optional<std::uint64_t> shuffle_seed = std::nullopt) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  std::vector<Point> pending(coords.begin(), coords.end());
  if (shuffle_seed) {
    std::mt19937_64 rng(*shuffle_seed);
    std::shuffle(pending.begin(), pending.end(), rng);
  }

  const double eps2 = epsilon * epsilon;
  std::vector<char> taken(pending.size(), 0);
  std::vector<Point> out;
  for (std::size_t pivot = 0; pivot < pending.size(); ++pivot) {
    if (taken[pivot]) continue;
    taken[pivot] = 1;
    const Point y = pending[pivot];
    double sx = y.x, sy = y.y;
    std::size_t m = 1;
    for (std::size_t k = pivot + 1; k < pending.size(); ++k) {
      if (taken[k] || squared_distance(y, pending[k]) >= eps2) continue;
      taken[k] = 1;
      sx += pending[k].x;
      sy += pending[k].y;
      ++m;
    }
    out.push_back({sx / static_cast<double>(m), sy / static_cast<double>(m)});
  }
  return out;
}

/// Grid coordinates to positions in meters (cell centers).
inline std::vector<Point> coords_to_centers(std::span<const Point> coords, const AreaSpec& area) {
  std::vector<Point> out;
  out.reserve(coords.size());
  for (const auto& c : coords) out.push_back(cell_center(c.x, c.y, area));
  return out;
}

}  // namespace uavcover
