// uavcover: scenario generation, placement solvers, correction, pooling loss,
// dataset export, deployment scoring and the coverage benchmark.
//
// Exit codes: 0 success, 1 validation error, 2 exact-solver budget exhausted
// (results are still written).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uavcover/uavcover.hpp"

namespace {

using namespace uavcover;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitBudget = 2;

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    detail::write_text(path, text);
  }
}

ordered_json points_json(std::span<const Point> pts) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : pts) arr.push_back({p.x, p.y});
  return arr;
}

struct ScenarioFlags {
  std::size_t ue = 400;
  std::uint64_t seed = 1;
  double side = 256.0;
  std::size_t grid = 256;
  int min_clusters = 3;
  int max_clusters = 8;
  double sigma = 0.05;
  double outliers = 0.05;

  void add(CLI::App* app) {
    app->add_option("--ue", ue, "number of UEs")->capture_default_str();
    app->add_option("--seed", seed, "scenario seed")->capture_default_str();
    app->add_option("--side", side, "area side length D in meters")->capture_default_str();
    app->add_option("--grid", grid, "grid cells per side")->capture_default_str();
    app->add_option("--min-clusters", min_clusters)->capture_default_str();
    app->add_option("--max-clusters", max_clusters)->capture_default_str();
    app->add_option("--sigma", sigma, "cluster spread as a fraction of D")->capture_default_str();
    app->add_option("--outliers", outliers, "fraction of uniform outliers")->capture_default_str();
  }

  AreaSpec area() const { return {side, grid}; }
  ScenarioParams params() const { return {ue, min_clusters, max_clusters, sigma, outliers}; }
  UEScenario generate() const { return generate_scenario(area(), params(), seed); }
};

// --- gen ----------------------------------------------------------------------

struct GenCmd {
  ScenarioFlags sc;
  std::string out;
  std::string matrix;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("gen", "generate a clustered UE scenario");
    sc.add(app);
    app->add_option("--out", out, "point file (.pts) to write")->required();
    app->add_option("--matrix", matrix, "also write the discretized UE matrix (.gmx)");
  }

  int run() const {
    const auto scenario = sc.generate();
    write_points(out, scenario.points, scenario.area.side);
    if (!matrix.empty()) write_matrix(matrix, discretize(scenario, scenario.area));
    ordered_json j{{"points", out}, {"p", scenario.points.size()}, {"seed", scenario.seed}, {"side", sc.side}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
};

// --- solve ----------------------------------------------------------------------

struct SolveCmd {
  ScenarioFlags sc;
  std::string points;
  std::string alg = "spiral";
  double ratio = 2.0;
  SolverConfig solver;
  std::string centers_out;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("solve", "run one placement solver on one scenario");
    app->add_option("--alg", alg, "exact | spiral | kmeans")
        ->check(CLI::IsMember({"exact", "spiral", "kmeans"}))
        ->capture_default_str();
    app->add_option("--points", points, "point file; otherwise a scenario is generated from the flags below");
    app->add_option("--R", ratio, "coverage ratio D/r")->capture_default_str();
    app->add_option("--budget", solver.time_budget_s, "exact solver time budget (s)")->capture_default_str();
    app->add_option("--kmeans-restarts", solver.kmeans_restarts)->capture_default_str();
    app->add_option("--kmeans-max-iter", solver.kmeans_max_iter)->capture_default_str();
    app->add_option("--solver-seed", solver.rng_seed)->capture_default_str();
    app->add_option("--centers", centers_out, "write UAV centers to this point file");
    sc.add(app);
  }

  int run() const {
    UEScenario scenario;
    if (!points.empty()) {
      auto file = read_points(points);
      scenario.points = std::move(file.points);
      scenario.area = {file.side, sc.grid};
    } else {
      scenario = sc.generate();
    }
    const auto cov = CoverageSpec::from_ratio(scenario.area, ratio);
    const auto sol = run_solver(parse_algorithm(alg), scenario.points, cov.radius, solver);
    const auto rep = evaluate(sol, scenario);
    if (!centers_out.empty()) write_points(centers_out, sol.centers, scenario.area.side);
    ordered_json j;
    j["algorithm"] = alg;
    j["R"] = ratio;
    j["p"] = rep.p;
    j["radius"] = cov.radius;
    j["uav_count"] = rep.uav_count;
    j["coverage_pct"] = rep.coverage_pct;
    j["optimal"] = sol.optimal;
    j["wall_time_s"] = sol.wall_time_s;
    j["centers"] = points_json(sol.centers);
    std::cout << j.dump(2) << "\n";
    if (!sol.optimal) {
      std::cerr << "exact solver budget exceeded; reporting best cover found\n";
      return kExitBudget;
    }
    return kExitOk;
  }
};

// --- correct --------------------------------------------------------------------

struct CorrectCmd {
  std::string input;
  CorrectionConfig corr;
  std::optional<std::uint64_t> shuffle;
  std::string out;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("correct", "collapse blurred UAV cells of a generator matrix");
    app->add_option("input", input, "generator output (.gmx)")->required();
    app->add_option("--epsilon", corr.epsilon, "merge distance in grid cells")->capture_default_str();
    app->add_option("--theta", corr.theta, "binarization threshold for real matrices")->capture_default_str();
    app->add_option("--shuffle-seed", shuffle, "take pivots in seeded random order");
    app->add_option("--out", out, "write corrected grid coordinates to a point file");
  }

  int run() {
    corr.shuffle_seed = shuffle;
    corr.check();
    const auto m = read_matrix(input);
    const auto coords = sparse_to_coords(m, corr.theta);
    const auto merged = correct(coords, corr.epsilon, corr.shuffle_seed);
    if (!out.empty()) write_points(out, merged, static_cast<double>(m.cols()));
    ordered_json j{{"input_count", coords.size()}, {"output_count", merged.size()}, {"coords", points_json(merged)}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
};

// --- loss -------------------------------------------------------------------------

struct LossCmd {
  std::string template_path, generated_path;
  std::vector<std::size_t> filters;
  bool json = false;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("loss", "multilayer sum-pooling loss between two matrices");
    app->add_option("template", template_path, "template matrix K (.gmx)")->required();
    app->add_option("generated", generated_path, "generated matrix Y (.gmx)")->required();
    app->add_option("--filters", filters, "filter sizes (default 1,2,4,...,64 capped at the grid)")->delimiter(',');
    app->add_flag("--json", json, "print JSON instead of a table");
  }

  int run() const {
    const auto k = read_matrix(template_path);
    const auto y = read_matrix(generated_path);
    PoolLossConfig cfg = PoolLossConfig::for_grid(std::min(k.rows(), k.cols()));
    if (!filters.empty()) cfg.filters = filters;
    const auto res = pool_loss(k, y, cfg);
    if (json) {
      ordered_json j;
      j["levels"] = ordered_json::array();
      for (const auto& l : res.per_level) j["levels"].push_back({{"filter", l.filter}, {"loss", l.loss}});
      j["total"] = res.total;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "filter\tloss\n";
      for (const auto& l : res.per_level) std::cout << l.filter << "\t" << format_real(l.loss) << "\n";
      std::cout << "total\t" << format_real(res.total) << "\n";
    }
    return kExitOk;
  }
};

// --- dataset --------------------------------------------------------------------------

struct DatasetCmd {
  ScenarioFlags sc;
  std::string out;
  std::size_t cases = 10;
  DatasetOptions opt;
  std::string template_alg = "exact";

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("dataset", "export X/K training pairs and a manifest");
    app->add_option("--out", out, "output directory")->required();
    app->add_option("--cases", cases, "number of scenarios")->capture_default_str();
    app->add_option("--R", opt.ratio, "coverage ratio D/r")->capture_default_str();
    app->add_option("--template", template_alg, "exact | spiral")
        ->check(CLI::IsMember({"exact", "spiral"}))
        ->capture_default_str();
    app->add_option("--budget", opt.solver.time_budget_s, "exact solver budget per case (s)")->capture_default_str();
    app->add_flag("--spiral-fallback", opt.spiral_fallback, "use the spiral cover when the exact budget runs out");
    sc.add(app);
  }

  int run() {
    opt.template_algorithm = parse_algorithm(template_alg);
    std::vector<UEScenario> scenarios;
    for (std::size_t k = 0; k < cases; ++k) {
      scenarios.push_back(generate_scenario(sc.area(), sc.params(), detail::mix_seed(sc.seed, k, 0)));
    }
    const auto rows = export_dataset(scenarios, opt, out);
    std::size_t exhausted = 0;
    for (const auto& r : rows) exhausted += r.status == "budget_exceeded";
    std::cout << manifest_to_string(rows);
    if (exhausted) {
      std::cerr << exhausted << " case(s) exhausted the exact solver budget\n";
      return kExitBudget;
    }
    return kExitOk;
  }
};

// --- deploy -----------------------------------------------------------------------------

constexpr const char* kDeployCsvHeader = "case,algorithm,R,p,epsilon,coverage_pct,uav_count,wall_time_s,blur_y_count";

struct DeployCmd {
  std::string predictions, dataset, csv, json;
  CorrectionConfig corr{2.0, 0.5, std::nullopt};

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("deploy", "deploy generator predictions and score their coverage");
    app->add_option("--predictions", predictions, "directory with case_<k>.Yhat.gmx")->required();
    app->add_option("--dataset", dataset, "dataset directory (manifest.tsv, case_<k>.pts)")->required();
    app->add_option("--epsilon", corr.epsilon, "merge distance in grid cells")->capture_default_str();
    app->add_option("--theta", corr.theta, "binarization threshold")->capture_default_str();
    app->add_option("--csv", csv, "CSV report path ('-' for stdout)");
    app->add_option("--json", json, "JSON report path ('-' for stdout)");
  }

  int run() const {
    corr.check();
    const auto manifest = read_manifest(std::filesystem::path(dataset) / "manifest.tsv");
    std::vector<std::size_t> ids;
    std::optional<std::size_t> grid_n;
    for (const auto& m : manifest) {
      ids.push_back(m.case_id);
      grid_n = m.grid_n;
    }
    const auto preds = import_predictions(predictions, grid_n, ids);

    std::string csv_text = std::string(kDeployCsvHeader) + "\n";
    ordered_json rows = ordered_json::array();
    for (const auto& pred : preds.entries) {
      const auto it = std::find_if(manifest.begin(), manifest.end(),
                                   [&](const ManifestRow& m) { return m.case_id == pred.case_id; });
      if (it == manifest.end()) continue;
      const auto pts = read_points(std::filesystem::path(dataset) / (case_stem(it->case_id) + ".pts"));
      const AreaSpec area{it->side, it->grid_n};
      const UEScenario scenario{pts.points, it->seed, {}, area};
      const auto sol = deploy(pred.y_raw, area, CoverageSpec::from_ratio(area, it->ratio), corr);
      auto rep = evaluate(sol, scenario);
      rep.epsilon = corr.epsilon;
      csv_text += std::to_string(it->case_id) + ",proposed," + format_real(rep.ratio) + "," + std::to_string(rep.p) +
                  "," + format_real(corr.epsilon) + "," + detail::fixed(rep.coverage_pct, 4) + "," +
                  std::to_string(rep.uav_count) + "," + detail::fixed(rep.wall_time_s, 6) + "," +
                  std::to_string(*rep.blur_y_count) + "\n";
      rows.push_back({{"case", it->case_id},
                      {"algorithm", "proposed"},
                      {"R", rep.ratio},
                      {"p", rep.p},
                      {"epsilon", corr.epsilon},
                      {"coverage_pct", rep.coverage_pct},
                      {"uav_count", rep.uav_count},
                      {"wall_time_s", rep.wall_time_s},
                      {"blur_y_count", *rep.blur_y_count},
                      {"centers", points_json(sol.centers)}});
    }
    if (!csv.empty() || json.empty()) write_or_print(csv, csv_text);
    if (!json.empty()) write_or_print(json, ordered_json{{"reports", rows}, {"errors", preds.errors}}.dump(2) + "\n");
    for (const auto& e : preds.errors) std::cerr << e << "\n";
    return preds.errors.empty() ? kExitOk : kExitInvalid;
  }
};

// --- bench ------------------------------------------------------------------------------

struct BenchCmd {
  std::string config_path, csv, json, dataset, predictions;
  std::vector<double> ratios, epsilons, exact_ratios;
  std::vector<std::size_t> ue;
  std::vector<std::string> algs;
  std::optional<std::size_t> samples, grid;
  std::optional<std::uint64_t> seed;
  std::optional<double> budget, side;
  bool no_warmup = false;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("bench", "run the coverage benchmark grid");
    app->add_option("--config", config_path, "JSON config; flags override its fields");
    app->add_option("--R", ratios, "coverage ratios")->delimiter(',');
    app->add_option("--ue", ue, "UE counts")->delimiter(',');
    app->add_option("--epsilon", epsilons, "correction epsilon per R")->delimiter(',');
    app->add_option("--exact-R", exact_ratios, "R values at which the exact solver runs")->delimiter(',');
    app->add_option("--algs", algs, "solvers to run")->delimiter(',')->check(CLI::IsMember({"exact", "spiral", "kmeans"}));
    app->add_option("--samples", samples, "scenarios per cell");
    app->add_option("--seed", seed, "base seed");
    app->add_option("--budget", budget, "exact solver budget per case (s)");
    app->add_option("--side", side, "area side length D");
    app->add_option("--grid", grid, "grid cells per side");
    app->add_option("--dataset", dataset, "dataset directory matching --predictions");
    app->add_option("--predictions", predictions, "generator predictions to deploy as the proposed row");
    app->add_flag("--no-warmup", no_warmup, "skip the discarded warm-up run");
    app->add_option("--csv", csv, "CSV output path ('-' for stdout)");
    app->add_option("--json", json, "JSON output path ('-' for stdout)");
  }

  BenchConfig config() const {
    BenchConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError(config_path + ": cannot open");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(config_path + ": " + e.what());
      }
      cfg = bench_config_from_json(j);
    }
    if (!ratios.empty()) {
      cfg.ratios = ratios;
      // Keep the default epsilon alignment when only R is overridden.
      if (epsilons.empty() && cfg.epsilons.size() != cfg.ratios.size()) {
        const BenchConfig defaults;
        cfg.epsilons.clear();
        for (double r : ratios) {
          double eps = 2.0;
          for (std::size_t i = 0; i < defaults.ratios.size(); ++i)
            if (defaults.ratios[i] == r) eps = defaults.epsilons[i];
          cfg.epsilons.push_back(eps);
        }
      }
    }
    if (!epsilons.empty()) cfg.epsilons = epsilons;
    if (!ue.empty()) cfg.ue_counts = ue;
    if (!exact_ratios.empty()) cfg.exact_ratios = exact_ratios;
    if (!algs.empty()) {
      cfg.algorithms.clear();
      for (const auto& a : algs) cfg.algorithms.push_back(parse_algorithm(a));
    }
    if (samples) cfg.samples = *samples;
    if (seed) cfg.seed = *seed;
    if (budget) cfg.solver.time_budget_s = *budget;
    if (side) cfg.area.side = *side;
    if (grid) cfg.area.grid_n = *grid;
    if (!dataset.empty()) cfg.dataset_dir = dataset;
    if (!predictions.empty()) cfg.predictions_dir = predictions;
    if (no_warmup) cfg.warmup = false;
    return cfg;
  }

  int run() const {
    const BenchConfig cfg = config();
    const BenchReport rep = run_bench(cfg);
    if (!csv.empty() || json.empty()) write_or_print(csv, bench_csv(rep));
    if (!json.empty()) write_or_print(json, to_json(rep, cfg).dump(2) + "\n");
    for (const auto& f : rep.failures) std::cerr << f << "\n";
    return kExitOk;
  }
};

// --- report ------------------------------------------------------------------------------

struct ReportCmd {
  std::string input;

  void add(CLI::App& root) {
    auto* app = root.add_subcommand("report", "print a bench CSV or JSON file as a table");
    app->add_option("input", input, "bench output (.csv or .json)")->required()->check(CLI::ExistingFile);
  }

  int run() const {
    std::vector<BenchRow> rows;
    if (std::filesystem::path(input).extension() == ".json") {
      std::ifstream in(input);
      nlohmann::json j;
      try {
        in >> j;
        for (const auto& r : j.at("rows")) rows.push_back(bench_row_from_json(r));
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(input + ": " + e.what());
      }
    } else {
      rows = read_bench_csv(input);
    }
    std::cout << format_report_table(rows);
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV coverage planning toolkit"};
  app.require_subcommand(1);
  GenCmd gen;
  SolveCmd solve;
  CorrectCmd correct_cmd;
  LossCmd loss;
  DatasetCmd dataset;
  DeployCmd deploy_cmd;
  BenchCmd bench;
  ReportCmd report;
  gen.add(app);
  solve.add(app);
  correct_cmd.add(app);
  loss.add(app);
  dataset.add(app);
  deploy_cmd.add(app);
  bench.add(app);
  report.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (app.got_subcommand("gen")) return gen.run();
    if (app.got_subcommand("solve")) return solve.run();
    if (app.got_subcommand("correct")) return correct_cmd.run();
    if (app.got_subcommand("loss")) return loss.run();
    if (app.got_subcommand("dataset")) return dataset.run();
    if (app.got_subcommand("deploy")) return deploy_cmd.run();
    if (app.got_subcommand("bench")) return bench.run();
    if (app.got_subcommand("report")) return report.run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
