#pragma once

// Coverage benchmark over a grid of (R, p) cells: each cell draws `samples`
// scenarios, runs every enabled solver on each and aggregates time, coverage
// and UAV count. Generator predictions, when supplied, are deployed and scored
// as the "proposed" row of their cell.

#include <sys/utsname.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavcover/io.hpp"
#include "uavcover/kmeans.hpp"
#include "uavcover/pipeline.hpp"
#include "uavcover/placement.hpp"
#include "uavcover/scenario.hpp"

namespace uavcover {

inline constexpr const char* kBenchCsvHeader =
    "algorithm,R,p,epsilon,samples,mean_time_s,sd_time_s,mean_coverage_pct,mean_uavs,sd_uavs,mean_blur_factor";

struct BenchConfig {
  std::vector<double> ratios{2.0, 4.0, 6.0};
  std::vector<std::size_t> ue_counts{400, 1000};
  std::vector<double> epsilons{160.0, 60.0, 40.0};  // aligned with ratios
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  std::vector<Algorithm> algorithms{Algorithm::exact, Algorithm::spiral, Algorithm::kmeans};
  std::vector<double> exact_ratios{2.0, 4.0, 6.0};  // exact solver runs only at these R
  SolverConfig solver{10.0, 5, 100, 1};
  AreaSpec area{256.0, 256};
  ScenarioParams scenario;
  bool warmup = true;
  std::optional<std::filesystem::path> dataset_dir;      // manifest + case_<k>.pts
  std::optional<std::filesystem::path> predictions_dir;  // case_<k>.Yhat.gmx
  double theta = 0.5;

  void check() const {
    if (ratios.empty() || ue_counts.empty()) throw ConfigError("bench needs at least one R and one UE count");
    for (double r : ratios)
      if (!(r > 0.0)) throw ConfigError("R values must be positive");
    for (auto p : ue_counts)
      if (p == 0) throw ConfigError("UE counts must be positive");
    if (epsilons.size() != ratios.size()) throw ConfigError("epsilon list must align with the R list");
    for (double e : epsilons)
      if (!(e > 0.0)) throw ConfigError("epsilon values must be positive");
    if (samples == 0) throw ConfigError("samples must be positive");
    if (predictions_dir.has_value() != dataset_dir.has_value())
      throw ConfigError("predictions and dataset directories go together");
    solver.check();
    area.check();
    scenario.check();
  }

  double epsilon_for(double ratio) const {
    for (std::size_t i = 0; i < ratios.size(); ++i)
      if (ratios[i] == ratio) return epsilons[i];
    throw ConfigError("no epsilon configured for R=" + format_real(ratio));
  }

  bool exact_enabled(double ratio) const {
    return std::find(exact_ratios.begin(), exact_ratios.end(), ratio) != exact_ratios.end();
  }
};

struct BenchRow {
  Algorithm algorithm = Algorithm::spiral;
  double ratio = 0.0;
  std::size_t p = 0;
  std::optional<double> epsilon;
  std::size_t samples = 0;
  double mean_time_s = 0.0;
  double sd_time_s = 0.0;
  double mean_coverage_pct = 0.0;
  double mean_uavs = 0.0;
  double sd_uavs = 0.0;
  std::optional<double> mean_blur_factor;
  std::size_t skipped = 0;  // exact cases dropped after exhausting the budget
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<std::string> failures;
  std::string clock_source = "std::chrono::steady_clock";
  std::string host;
};

inline std::string host_info() {
  utsname u{};
  if (uname(&u) != 0) return "unknown";
  return std::string(u.sysname) + " " + u.release + " " + u.machine;
}

namespace detail {

struct Accumulator {
  std::vector<double> time, coverage, uavs, blur;
  std::size_t skipped = 0;

  static std::pair<double, double> mean_sd(const std::vector<double>& v) {
    if (v.empty()) return {0.0, 0.0};
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    if (v.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
  }

  void add(const CoverageReport& rep) {
    time.push_back(rep.wall_time_s);
    coverage.push_back(rep.coverage_pct);
    uavs.push_back(static_cast<double>(rep.uav_count));
    if (rep.blur_y_count && rep.uav_count > 0)
      blur.push_back(static_cast<double>(*rep.blur_y_count) / static_cast<double>(rep.uav_count));
  }

  BenchRow row(Algorithm alg, double ratio, std::size_t p) const {
    BenchRow r;
    r.algorithm = alg;
    r.ratio = ratio;
    r.p = p;
    r.samples = time.size();
    std::tie(r.mean_time_s, r.sd_time_s) = mean_sd(time);
    r.mean_coverage_pct = mean_sd(coverage).first;
    std::tie(r.mean_uavs, r.sd_uavs) = mean_sd(uavs);
    if (!blur.empty()) r.mean_blur_factor = mean_sd(blur).first;
    r.skipped = skipped;
    return r;
  }
};

}  // namespace detail

/// Seed of sample `sample` in cell (ratio_index, p).
inline std::uint64_t bench_scenario_seed(std::uint64_t seed, std::size_t ratio_index, std::size_t p,
                                         std::size_t sample) {
  return detail::mix_seed(seed, (static_cast<std::uint64_t>(ratio_index) << 40) ^ p, sample);
}

inline BenchReport run_bench(const BenchConfig& cfg) {
  cfg.check();
  BenchReport report;
  report.host = host_info();

  std::vector<ManifestRow> manifest;
  std::map<std::size_t, GridMatrix> predictions;
  if (cfg.predictions_dir) {
    manifest = read_manifest(*cfg.dataset_dir / "manifest.tsv");
    auto imported = import_predictions(*cfg.predictions_dir);
    for (auto& e : imported.errors) report.failures.push_back(std::move(e));
    for (auto& e : imported.entries) predictions.emplace(e.case_id, std::move(e.y_raw));
  }

  for (std::size_t ri = 0; ri < cfg.ratios.size(); ++ri) {
    const double ratio = cfg.ratios[ri];
    const auto coverage = CoverageSpec::from_ratio(cfg.area, ratio);
    for (const std::size_t p : cfg.ue_counts) {
      std::vector<UEScenario> scenarios;
      for (std::size_t s = 0; s < cfg.samples; ++s) {
        ScenarioParams params = cfg.scenario;
        params.ue_count = p;
        scenarios.push_back(generate_scenario(cfg.area, params, bench_scenario_seed(cfg.seed, ri, p, s)));
      }

      for (const Algorithm alg : cfg.algorithms) {
        if (alg == Algorithm::proposed) continue;
        if (alg == Algorithm::exact && !cfg.exact_enabled(ratio)) continue;
        if (cfg.warmup) (void)run_solver(alg, scenarios.front().points, coverage.radius, cfg.solver);
        detail::Accumulator acc;
        for (std::size_t s = 0; s < scenarios.size(); ++s) {
          const auto sol = run_solver(alg, scenarios[s].points, coverage.radius, cfg.solver);
          if (!sol.optimal) {
            ++acc.skipped;
            report.failures.push_back(std::string(to_string(alg)) + " R=" + format_real(ratio) + " p=" +
                                      std::to_string(p) + " sample=" + std::to_string(s) + ": budget exceeded");
            continue;
          }
          acc.add(evaluate(sol, scenarios[s]));
        }
        report.rows.push_back(acc.row(alg, ratio, p));
      }

      if (cfg.predictions_dir) {
        const double eps = cfg.epsilon_for(ratio);
        detail::Accumulator acc;
        bool warmed = !cfg.warmup;
        for (const auto& m : manifest) {
          if (m.ratio != ratio || m.p != p) continue;
          auto it = predictions.find(m.case_id);
          if (it == predictions.end()) continue;
          try {
            const auto pts = read_points(*cfg.dataset_dir / (case_stem(m.case_id) + ".pts"));
            const AreaSpec area{m.side, m.grid_n};
            const UEScenario sc{pts.points, m.seed, cfg.scenario, area};
            const auto cov = CoverageSpec::from_ratio(area, ratio);
            const CorrectionConfig corr{eps, cfg.theta, std::nullopt};
            if (!warmed) {
              (void)deploy(it->second, area, cov, corr);
              warmed = true;
            }
            auto rep = evaluate(deploy(it->second, area, cov, corr), sc);
            rep.epsilon = eps;
            acc.add(rep);
          } catch (const std::exception& e) {
            report.failures.push_back(case_stem(m.case_id) + ": " + e.what());
          }
        }
        if (!acc.time.empty()) {
          auto row = acc.row(Algorithm::proposed, ratio, p);
          row.epsilon = eps;
          report.rows.push_back(row);
        }
      }
    }
  }
  return report;
}

// --- serialization ----------------------------------------------------------

namespace detail {

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string split_join(const std::vector<std::string>& parts, char sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

}  // namespace detail

inline std::string bench_csv(const BenchReport& rep) {
  std::string s = std::string(kBenchCsvHeader) + "\n";
  for (const auto& r : rep.rows) {
    s += detail::split_join({to_string(r.algorithm), format_real(r.ratio), std::to_string(r.p),
                             r.epsilon ? format_real(*r.epsilon) : "", std::to_string(r.samples),
                             detail::fixed(r.mean_time_s, 6), detail::fixed(r.sd_time_s, 6),
                             detail::fixed(r.mean_coverage_pct, 4), detail::fixed(r.mean_uavs, 4),
                             detail::fixed(r.sd_uavs, 4),
                             r.mean_blur_factor ? detail::fixed(*r.mean_blur_factor, 4) : ""},
                            ',');
    s += "\n";
  }
  return s;
}

inline nlohmann::ordered_json to_json(const BenchConfig& c) {
  nlohmann::ordered_json j;
  j["R"] = c.ratios;
  j["ue"] = c.ue_counts;
  j["epsilon"] = c.epsilons;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  std::vector<std::string> algs;
  for (auto a : c.algorithms) algs.emplace_back(to_string(a));
  j["algorithms"] = algs;
  j["exact_R"] = c.exact_ratios;
  j["exact_budget_s"] = c.solver.time_budget_s;
  j["kmeans_restarts"] = c.solver.kmeans_restarts;
  j["kmeans_max_iter"] = c.solver.kmeans_max_iter;
  j["solver_seed"] = c.solver.rng_seed;
  j["side"] = c.area.side;
  j["grid_n"] = c.area.grid_n;
  j["warmup"] = c.warmup;
  j["theta"] = c.theta;
  j["dataset"] = c.dataset_dir ? nlohmann::ordered_json(c.dataset_dir->string()) : nullptr;
  j["predictions"] = c.predictions_dir ? nlohmann::ordered_json(c.predictions_dir->string()) : nullptr;
  return j;
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline BenchConfig bench_config_from_json(const nlohmann::json& j, BenchConfig c = {}) {
  static const std::set<std::string> known{"R",           "ue",          "epsilon",     "samples",       "seed",
                                           "algorithms",  "exact_R",     "exact_budget_s", "kmeans_restarts",
                                           "kmeans_max_iter", "solver_seed", "side",      "grid_n",        "warmup",
                                           "theta",       "dataset",     "predictions"};
  if (!j.is_object()) throw ConfigError("bench config must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw ConfigError("unknown bench config key '" + key + "'");
  try {
    if (j.contains("R")) c.ratios = j["R"].get<std::vector<double>>();
    if (j.contains("ue")) c.ue_counts = j["ue"].get<std::vector<std::size_t>>();
    if (j.contains("epsilon")) c.epsilons = j["epsilon"].get<std::vector<double>>();
    if (j.contains("samples")) c.samples = j["samples"].get<std::size_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("algorithms")) {
      c.algorithms.clear();
      for (const auto& a : j["algorithms"]) c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    if (j.contains("exact_R")) c.exact_ratios = j["exact_R"].get<std::vector<double>>();
    if (j.contains("exact_budget_s")) c.solver.time_budget_s = j["exact_budget_s"].get<double>();
    if (j.contains("kmeans_restarts")) c.solver.kmeans_restarts = j["kmeans_restarts"].get<int>();
    if (j.contains("kmeans_max_iter")) c.solver.kmeans_max_iter = j["kmeans_max_iter"].get<int>();
    if (j.contains("solver_seed")) c.solver.rng_seed = j["solver_seed"].get<std::uint64_t>();
    if (j.contains("side")) c.area.side = j["side"].get<double>();
    if (j.contains("grid_n")) c.area.grid_n = j["grid_n"].get<std::size_t>();
    if (j.contains("warmup")) c.warmup = j["warmup"].get<bool>();
    if (j.contains("theta")) c.theta = j["theta"].get<double>();
    if (j.contains("dataset") && !j["dataset"].is_null()) c.dataset_dir = j["dataset"].get<std::string>();
    if (j.contains("predictions") && !j["predictions"].is_null())
      c.predictions_dir = j["predictions"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bench config: ") + e.what());
  }
  return c;
}

inline nlohmann::ordered_json to_json(const BenchRow& r) {
  nlohmann::ordered_json j;
  j["algorithm"] = to_string(r.algorithm);
  j["R"] = r.ratio;
  j["p"] = r.p;
  j["epsilon"] = r.epsilon ? nlohmann::ordered_json(*r.epsilon) : nullptr;
  j["samples"] = r.samples;
  j["skipped"] = r.skipped;
  j["mean_time_s"] = r.mean_time_s;
  j["sd_time_s"] = r.sd_time_s;
  j["mean_coverage_pct"] = r.mean_coverage_pct;
  j["mean_uavs"] = r.mean_uavs;
  j["sd_uavs"] = r.sd_uavs;
  j["mean_blur_factor"] = r.mean_blur_factor ? nlohmann::ordered_json(*r.mean_blur_factor) : nullptr;
  return j;
}

inline nlohmann::ordered_json to_json(const BenchReport& rep, const BenchConfig& cfg) {
  nlohmann::ordered_json j;
  j["config"] = to_json(cfg);
  j["environment"] = {{"clock", rep.clock_source}, {"host", rep.host}};
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rep.rows) j["rows"].push_back(to_json(r));
  j["failures"] = rep.failures;
  return j;
}

inline BenchRow bench_row_from_json(const nlohmann::json& j) {
  BenchRow r;
  r.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
  r.ratio = j.at("R").get<double>();
  r.p = j.at("p").get<std::size_t>();
  if (!j.at("epsilon").is_null()) r.epsilon = j["epsilon"].get<double>();
  r.samples = j.at("samples").get<std::size_t>();
  r.skipped = j.value("skipped", std::size_t{0});
  r.mean_time_s = j.at("mean_time_s").get<double>();
  r.sd_time_s = j.at("sd_time_s").get<double>();
  r.mean_coverage_pct = j.at("mean_coverage_pct").get<double>();
  r.mean_uavs = j.at("mean_uavs").get<double>();
  r.sd_uavs = j.at("sd_uavs").get<double>();
  if (!j.at("mean_blur_factor").is_null()) r.mean_blur_factor = j["mean_blur_factor"].get<double>();
  return r;
}

/// Parses the CSV written by bench_csv(); throws ParseError on schema drift.
inline std::vector<BenchRow> read_bench_csv(const std::filesystem::path& path) {
  detail::LineReader in(path);
  std::string line;
  if (!in.next(line) || line != kBenchCsvHeader) in.fail("unexpected bench CSV header");
  std::vector<BenchRow> rows;
  while (in.next(line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (std::size_t comma; (comma = rest.find(',')) != std::string_view::npos; rest.remove_prefix(comma + 1))
      f.push_back(rest.substr(0, comma));
    f.push_back(rest);
    if (f.size() != 11) in.fail("expected 11 fields");
    BenchRow r;
    try {
      r.algorithm = parse_algorithm(f[0]);
    } catch (const std::invalid_argument& e) {
      in.fail(e.what());
    }
    r.ratio = in.number<double>(f[1]);
    r.p = in.number<std::size_t>(f[2]);
    if (!f[3].empty()) r.epsilon = in.number<double>(f[3]);
    r.samples = in.number<std::size_t>(f[4]);
    r.mean_time_s = in.number<double>(f[5]);
    r.sd_time_s = in.number<double>(f[6]);
    r.mean_coverage_pct = in.number<double>(f[7]);
    r.mean_uavs = in.number<double>(f[8]);
    r.sd_uavs = in.number<double>(f[9]);
    if (!f[10].empty()) r.mean_blur_factor = in.number<double>(f[10]);
    rows.push_back(r);
  }
  return rows;
}

/// Fixed-width table in the layout of the usual time/coverage/UAV summary.
inline std::string format_report_table(const std::vector<BenchRow>& rows) {
  char buf[256];
  std::string s;
  std::snprintf(buf, sizeof buf, "%-9s %5s %6s %8s %7s %13s %12s %10s %8s\n", "algorithm", "R", "UEs", "epsilon",
                "samples", "mean time (s)", "coverage (%)", "mean UAVs", "blur");
  s += buf;
  for (const auto& r : rows) {
    const std::string eps = r.epsilon ? format_real(*r.epsilon) : "-";
    const std::string blur = r.mean_blur_factor ? detail::fixed(*r.mean_blur_factor, 2) : "-";
    std::snprintf(buf, sizeof buf, "%-9s %5s %6zu %8s %7zu %13.5f %12.1f %10.2f %8s\n", to_string(r.algorithm),
                  format_real(r.ratio).c_str(), r.p, eps.c_str(), r.samples, r.mean_time_s, r.mean_coverage_pct,
                  r.mean_uavs, blur.c_str());
    s += buf;
  }
  return s;
}

}  // namespace uavcover
