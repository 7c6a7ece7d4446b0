#pragma once

// Multilayer sum-pooling loss between a template UAV matrix K and a generated
// matrix Y: squared error between stride-1 sum-pooled copies of both, summed
// over filter sizes 1, 2, 4, ... The pooled matrices keep the input shape
// (floor((f-1)/2) zero cells before, ceil((f-1)/2) after on each axis), so
// every level reduces to one scalar and the levels add up.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavcover/grid.hpp"

namespace uavcover {

struct PoolLossConfig {
  std::vector<std::size_t> filters{1, 2, 4, 8, 16, 32, 64};

  /// Default schedule with filters larger than the grid dropped.
  static PoolLossConfig for_grid(std::size_t n) {
    PoolLossConfig cfg;
    std::erase_if(cfg.filters, [&](std::size_t f) { return f > n; });
    return cfg;
  }

  void check(std::size_t n) const {
    if (filters.empty()) throw std::invalid_argument("filter schedule is empty");
    for (std::size_t k = 0; k < filters.size(); ++k) {
      const std::size_t f = filters[k];
      if (f == 0 || (f & (f - 1)) != 0) throw std::invalid_argument("filter sizes must be powers of two");
      if (k > 0 && f <= filters[k - 1]) throw std::invalid_argument("filter sizes must be strictly increasing");
      if (f > std::min<std::size_t>(64, n))
        throw std::invalid_argument("filter size " + std::to_string(f) + " exceeds min(64, grid size)");
    }
  }
};

struct PoolLevel {
  std::size_t filter = 1;
  double loss = 0.0;
};

struct PoolLossResult {
  std::vector<PoolLevel> per_level;
  double total = 0.0;
};

/// Stride-1 f x f window sums with same-size output, via a summed-area table.
inline GridMatrix sum_pool(const GridMatrix& m, std::size_t f) {
  if (f < 1 || f > std::min(m.rows(), m.cols()))
    throw std::invalid_argument("pool size " + std::to_string(f) + " out of range");
  const std::size_t rows = m.rows(), cols = m.cols();
  // sat(i, j) = sum of m over [0, i) x [0, j)
  std::vector<double> sat((rows + 1) * (cols + 1), 0.0);
  const auto at = [&](std::size_t i, std::size_t j) -> double& { return sat[i * (cols + 1) + j]; };
  for (std::size_t i = 0; i < rows; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      row_sum += m(i, j);
      at(i + 1, j + 1) = at(i, j + 1) + row_sum;
    }
  }

  const auto before = static_cast<std::ptrdiff_t>((f - 1) / 2);
  const auto after = static_cast<std::ptrdiff_t>(f / 2);
  const auto clip = [](std::ptrdiff_t v, std::size_t hi) {
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(v, 0, static_cast<std::ptrdiff_t>(hi)));
  };
  GridMatrix out(rows, cols, m.kind());
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t r0 = clip(static_cast<std::ptrdiff_t>(i) - before, rows);
    const std::size_t r1 = clip(static_cast<std::ptrdiff_t>(i) + after + 1, rows);
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t c0 = clip(static_cast<std::ptrdiff_t>(j) - before, cols);
      const std::size_t c1 = clip(static_cast<std::ptrdiff_t>(j) + after + 1, cols);
      out(i, j) = at(r1, c1) - at(r0, c1) - at(r1, c0) + at(r0, c0);
    }
  }
  return out;
}

inline PoolLossResult pool_loss(const GridMatrix& k, const GridMatrix& y, const PoolLossConfig& config) {
  if (!k.same_shape(y)) throw std::invalid_argument("pool_loss: matrix shapes differ");
  config.check(std::min(k.rows(), k.cols()));
  PoolLossResult out;
  for (const std::size_t f : config.filters) {
    const GridMatrix pk = sum_pool(k, f);
    const GridMatrix py = sum_pool(y, f);
    double level = 0.0;
    for (std::size_t c = 0; c < pk.cells().size(); ++c) {
      const double d = pk.cells()[c] - py.cells()[c];
      level += d * d;
    }
    out.per_level.push_back({f, level});
    out.total += level;
  }
  return out;
}

inline PoolLossResult pool_loss(const GridMatrix& k, const GridMatrix& y) {
  return pool_loss(k, y, PoolLossConfig::for_grid(std::min(k.rows(), k.cols())));
}

}  // namespace uavcover
