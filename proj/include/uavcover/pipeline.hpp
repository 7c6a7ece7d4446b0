#pragma once

// Deployment phase and the dataset interchange shared with the trainer.
//
// Dataset directory:
//   manifest.tsv        one row per case (see kManifestHeader)
//   case_<k>.X.gmx      UE counts per cell
//   case_<k>.K.gmx      template UAV occupancy (one unit per UAV)
//   case_<k>.pts        the UE positions the matrices were built from
// Prediction directory:
//   case_<k>.Yhat.gmx   raw generator output, real-valued

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <vector>

#include "uavcover/correction.hpp"
#include "uavcover/exact.hpp"
#include "uavcover/geometry.hpp"
#include "uavcover/grid.hpp"
#include "uavcover/io.hpp"
#include "uavcover/kmeans.hpp"
#include "uavcover/placement.hpp"
#include "uavcover/scenario.hpp"
#include "uavcover/spiral.hpp"

namespace uavcover {

struct CoverageReport {
  Algorithm algorithm = Algorithm::proposed;
  double coverage_pct = 0.0;
  std::size_t uav_count = 0;
  double wall_time_s = 0.0;
  std::size_t p = 0;
  double ratio = 0.0;
  std::optional<double> epsilon;
  std::optional<std::size_t> blur_y_count;
  bool vacuous = false;  // p == 0, reported as 100%
  bool optimal = true;
};

/// Raw generator matrix -> binarized coordinates -> correction -> UAV centers
/// in meters. Only this composition is timed. covered_count is left at zero;
/// evaluate() scores the solution against a scenario.
inline PlacementSolution deploy(const GridMatrix& y_raw, const AreaSpec& area, const CoverageSpec& coverage,
                                const CorrectionConfig& corr) {
  area.check();
  corr.check();
  if (y_raw.rows() != area.grid_n || y_raw.cols() != area.grid_n)
    throw std::invalid_argument("deploy: matrix shape does not match the area grid");
  Stopwatch timer;
  const auto coords = sparse_to_coords(y_raw, corr.theta);
  const auto merged = correct(coords, corr.epsilon, corr.shuffle_seed);
  PlacementSolution sol;
  sol.centers = coords_to_centers(merged, area);
  sol.wall_time_s = timer.seconds();
  sol.algorithm = Algorithm::proposed;
  sol.radius = coverage.radius;
  sol.blur_count = coords.size();
  return sol;
}

inline CoverageReport evaluate(const PlacementSolution& solution, const UEScenario& scenario) {
  CoverageReport rep;
  rep.algorithm = solution.algorithm;
  rep.uav_count = solution.uav_count();
  rep.wall_time_s = solution.wall_time_s;
  rep.p = scenario.points.size();
  rep.ratio = scenario.area.side / solution.radius;
  rep.blur_y_count = solution.blur_count;
  rep.optimal = solution.optimal;
  if (rep.p == 0) {
    rep.coverage_pct = 100.0;
    rep.vacuous = true;
  } else {
    const auto covered = coverage_count(scenario.points, solution.centers, solution.radius);
    rep.coverage_pct = 100.0 * static_cast<double>(covered) / static_cast<double>(rep.p);
  }
  return rep;
}

inline PlacementSolution run_solver(Algorithm alg, std::span<const Point> points, double radius,
                                    const SolverConfig& config) {
  switch (alg) {
    case Algorithm::exact: return solve_exact(points, radius, config);
    case Algorithm::spiral: return solve_spiral(points, radius);
    case Algorithm::kmeans: return solve_kmeans(points, radius, config);
    case Algorithm::proposed: break;
  }
  throw std::invalid_argument("the proposed approach needs generator output, not a point set");
}

// --- dataset manifest -------------------------------------------------------

inline constexpr const char* kManifestHeader = "case\tseed\tp\tR\tD\tn\ttemplate\tuavs\tstatus";

struct ManifestRow {
  std::size_t case_id = 0;
  std::uint64_t seed = 0;
  std::size_t p = 0;
  double ratio = 0.0;
  double side = 0.0;
  std::size_t grid_n = 0;
  Algorithm template_algorithm = Algorithm::exact;
  std::size_t uavs = 0;
  std::string status = "optimal";  // optimal | budget_exceeded | heuristic
};

inline std::string case_stem(std::size_t case_id) { return "case_" + std::to_string(case_id); }

inline std::string manifest_to_string(std::span<const ManifestRow> rows) {
  std::string s = std::string(kManifestHeader) + "\n";
  for (const auto& r : rows) {
    s += std::to_string(r.case_id) + "\t" + std::to_string(r.seed) + "\t" + std::to_string(r.p) + "\t" +
         format_real(r.ratio) + "\t" + format_real(r.side) + "\t" + std::to_string(r.grid_n) + "\t" +
         to_string(r.template_algorithm) + "\t" + std::to_string(r.uavs) + "\t" + r.status + "\n";
  }
  return s;
}

inline std::vector<ManifestRow> read_manifest(const std::filesystem::path& path) {
  detail::LineReader in(path);
  std::string line;
  if (!in.next(line) || line != kManifestHeader) in.fail("expected manifest header");
  std::vector<ManifestRow> rows;
  while (in.next(line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (std::size_t tab; (tab = rest.find('\t')) != std::string_view::npos; rest.remove_prefix(tab + 1))
      f.push_back(rest.substr(0, tab));
    f.push_back(rest);
    if (f.size() != 9) in.fail("expected 9 tab-separated fields");
    ManifestRow r;
    r.case_id = in.number<std::size_t>(f[0]);
    r.seed = in.number<std::uint64_t>(f[1]);
    r.p = in.number<std::size_t>(f[2]);
    r.ratio = in.number<double>(f[3]);
    r.side = in.number<double>(f[4]);
    r.grid_n = in.number<std::size_t>(f[5]);
    try {
      r.template_algorithm = parse_algorithm(f[6]);
    } catch (const std::invalid_argument& e) {
      in.fail(e.what());
    }
    r.uavs = in.number<std::size_t>(f[7]);
    r.status = std::string(f[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Template occupancy: one unit per UAV in the cell holding its center.
/// Centers outside the area (possible for exact covers near the edge) are
/// clamped onto it first.
inline GridMatrix template_matrix(std::span<const Point> centers, const AreaSpec& area) {
  std::vector<Point> clamped;
  clamped.reserve(centers.size());
  for (const auto& c : centers) clamped.push_back({std::clamp(c.x, 0.0, area.side), std::clamp(c.y, 0.0, area.side)});
  return discretize(clamped, area);
}

struct DatasetOptions {
  double ratio = 2.0;
  Algorithm template_algorithm = Algorithm::exact;
  SolverConfig solver;
  // Replace a budget-exhausted exact template by the spiral cover.
  bool spiral_fallback = false;
};

/// Writes X/K pairs, point files and manifest.tsv; returns the manifest rows.
inline std::vector<ManifestRow> export_dataset(std::span<const UEScenario> scenarios, const DatasetOptions& opt,
                                               const std::filesystem::path& out_dir) {
  if (opt.template_algorithm == Algorithm::proposed) throw std::invalid_argument("template solver must be a reference solver");
  std::filesystem::create_directories(out_dir);
  std::vector<ManifestRow> rows;
  for (std::size_t k = 0; k < scenarios.size(); ++k) {
    const UEScenario& sc = scenarios[k];
    const auto coverage = CoverageSpec::from_ratio(sc.area, opt.ratio);
    PlacementSolution sol = run_solver(opt.template_algorithm, sc.points, coverage.radius, opt.solver);
    std::string status = opt.template_algorithm == Algorithm::exact ? "optimal" : "heuristic";
    if (!sol.optimal) {
      status = "budget_exceeded";
      if (opt.spiral_fallback) sol = solve_spiral(sc.points, coverage.radius);
    }
    const std::string stem = case_stem(k);
    write_matrix(out_dir / (stem + ".X.gmx"), discretize(sc, sc.area));
    write_matrix(out_dir / (stem + ".K.gmx"), template_matrix(sol.centers, sc.area));
    write_points(out_dir / (stem + ".pts"), sc.points, sc.area.side);
    rows.push_back({k, sc.seed, sc.points.size(), opt.ratio, sc.area.side, sc.area.grid_n, sol.algorithm,
                    sol.uav_count(), status});
  }
  detail::write_text(out_dir / "manifest.tsv", manifest_to_string(rows));
  return rows;
}

struct Prediction {
  std::size_t case_id = 0;
  GridMatrix y_raw;
};

struct PredictionSet {
  std::vector<Prediction> entries;
  std::vector<std::string> errors;
};

/// Loads every case_<k>.Yhat.gmx in `dir` (sorted by case id). Malformed or
/// invalid files and cases listed in `expected` without a file become error
/// entries; the rest still load.
inline PredictionSet import_predictions(const std::filesystem::path& dir, std::optional<std::size_t> grid_n = {},
                                        std::span<const std::size_t> expected = {}) {
  PredictionSet out;
  static const std::regex pattern(R"(case_(\d+)\.Yhat\.gmx)");
  std::map<std::size_t, std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && std::regex_match(name, m, pattern)) files[std::stoull(m[1].str())] = entry.path();
  }
  for (auto id : expected) {
    if (!files.contains(id)) out.errors.push_back(case_stem(id) + ": missing prediction");
  }
  for (const auto& [id, path] : files) {
    try {
      GridMatrix m = read_matrix(path);
      std::string problem = m.validate();
      if (problem.empty() && m.rows() != m.cols()) problem = "matrix is not square";
      if (problem.empty() && grid_n && m.rows() != *grid_n)
        problem = "expected " + std::to_string(*grid_n) + "x" + std::to_string(*grid_n) + " matrix";
      if (!problem.empty()) {
        out.errors.push_back(case_stem(id) + ": " + problem);
        continue;
      }
      out.entries.push_back({id, std::move(m)});
    } catch (const ParseError& e) {
      out.errors.push_back(case_stem(id) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace uavcover
