#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uavcover/geometry.hpp"

namespace uavcover {

enum class Algorithm { exact, spiral, kmeans, proposed };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::exact: return "exact";
    case Algorithm::spiral: return "spiral";
    case Algorithm::kmeans: return "kmeans";
    case Algorithm::proposed: return "proposed";
  }
  return "unknown";
}

inline Algorithm parse_algorithm(std::string_view name) {
  if (name == "exact") return Algorithm::exact;
  if (name == "spiral") return Algorithm::spiral;
  if (name == "kmeans") return Algorithm::kmeans;
  if (name == "proposed") return Algorithm::proposed;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

struct PlacementSolution {
  std::vector<Point> centers;
  double radius = 0.0;
  Algorithm algorithm = Algorithm::exact;
  double wall_time_s = 0.0;
  std::size_t covered_count = 0;
  // False only when the exact solver ran out of budget; centers are then the
  // best cover found so far.
  bool optimal = true;
  // Number of generator cells before correction (deployment only).
  std::optional<std::size_t> blur_count;

  std::size_t uav_count() const { return centers.size(); }
};

struct SolverConfig {
  double time_budget_s = 10.0;
  int kmeans_restarts = 5;
  int kmeans_max_iter = 100;
  std::uint64_t rng_seed = 1;

  void check() const {
    if (!(time_budget_s > 0.0)) throw std::invalid_argument("time budget must be positive");
    if (kmeans_restarts < 1) throw std::invalid_argument("kmeans restarts must be at least 1");
    if (kmeans_max_iter < 1) throw std::invalid_argument("kmeans iteration cap must be at least 1");
  }
};

class Stopwatch {
 public:
  using clock = std::chrono::steady_clock;

  Stopwatch() : start_(clock::now()) {}

  double seconds() const { return std::chrono::duration<double>(clock::now() - start_).count(); }

 private:
  clock::time_point start_;
};

inline void check_radius(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("coverage radius must be positive");
}

}  // namespace uavcover
