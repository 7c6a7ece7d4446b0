#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace uavcover {

enum class CellKind { integer, real };

inline const char* to_string(CellKind kind) { return kind == CellKind::integer ? "int" : "real"; }

/// Dense row-major matrix used for UE counts (X), template UAV occupancy (K)
/// and raw generator output (Y). Row index is the y axis, column the x axis.
class GridMatrix {
 public:
  GridMatrix() = default;

  GridMatrix(std::size_t rows, std::size_t cols, CellKind kind = CellKind::integer)
      : rows_(rows), cols_(cols), kind_(kind), cells_(rows * cols, 0.0) {}

  GridMatrix(std::size_t rows, std::size_t cols, CellKind kind, std::vector<double> cells)
      : rows_(rows), cols_(cols), kind_(kind), cells_(std::move(cells)) {
    if (cells_.size() != rows_ * cols_) throw std::invalid_argument("cell count does not match matrix shape");
  }

  static GridMatrix square(std::size_t n, CellKind kind = CellKind::integer) { return GridMatrix(n, n, kind); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  CellKind kind() const { return kind_; }
  bool empty() const { return cells_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }

  const std::vector<double>& cells() const { return cells_; }
  std::vector<double>& cells() { return cells_; }

  double sum() const { return std::accumulate(cells_.begin(), cells_.end(), 0.0); }

  bool same_shape(const GridMatrix& other) const { return rows_ == other.rows_ && cols_ == other.cols_; }

  /// Empty string when every cell is finite and non-negative (and integral for
  /// integer matrices); otherwise a description of the first offending cell.
  std::string validate() const {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const double v = (*this)(i, j);
        const std::string where = "cell (" + std::to_string(i) + "," + std::to_string(j) + ")";
        if (!std::isfinite(v)) return where + " is not finite";
        if (v < 0.0) return where + " is negative";
        if (kind_ == CellKind::integer && v != std::floor(v)) return where + " is not an integer";
      }
    }
    return {};
  }

  friend bool operator==(const GridMatrix&, const GridMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  CellKind kind_ = CellKind::integer;
  std::vector<double> cells_;
};

}  // namespace uavcover
