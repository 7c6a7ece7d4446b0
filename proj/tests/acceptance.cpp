// Acceptance suite: one PASS/FAIL line per criterion. Usage:
//   acceptance [criterion ...]     (default: all of 1-7)
// Exit status is non-zero when any selected criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "support/oracles.hpp"
#include "support/run.hpp"
#include "support/tmpdir.hpp"
#include "uavcover/uavcover.hpp"

using namespace uavcover;
using testing_support::TempDir;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Instance {
  std::vector<Point> points;
  double ratio;
};

// p in 1..12 cycling, R in {2,4,6} cycling; clustered and uniform scenarios
// alternate.
std::vector<Instance> small_suite(std::size_t count) {
  std::vector<Instance> out;
  const double ratios[] = {2, 4, 6};
  for (std::size_t k = 0; k < count; ++k) {
    ScenarioParams params;
    params.ue_count = 1 + k % 12;
    auto pts = (k / 36) % 2 ? oracle::uniform_points(params.ue_count, 256.0, 1000 + k)
                            : generate_scenario({}, params, 1000 + k).points;
    out.push_back({std::move(pts), ratios[(k / 12) % 3]});
  }
  return out;
}

// --- 1: exact == brute force -------------------------------------------------

Outcome exact_matches_brute_force() {
  const auto suite = small_suite(144);
  Stopwatch timer;
  std::size_t mismatches = 0, optimum_sum = 0, max_optimum = 0;
  for (const auto& inst : suite) {
    const double r = 256.0 / inst.ratio;
    const auto sol = solve_exact(inst.points, r);
    const auto want = oracle::brute_force_min_cover(inst.points, r);
    optimum_sum += want;
    max_optimum = std::max(max_optimum, want);
    if (!sol.optimal || sol.uav_count() != want) ++mismatches;
    if (oracle::covered(inst.points, sol.centers, r) != inst.points.size()) ++mismatches;
  }
  const double secs = timer.seconds();
  return {mismatches == 0 && secs < 60.0, std::to_string(suite.size()) + " instances, " + std::to_string(mismatches) +
                                              " mismatches (optimum mean " +
                                              fmt("%.2f", double(optimum_sum) / double(suite.size())) + ", max " +
                                              std::to_string(max_optimum) + "), " + fmt("%.3f s", secs) +
                                              " (limit 60 s)"};
}

// --- 2: spiral soundness ----------------------------------------------------

Outcome spiral_soundness() {
  auto suite = small_suite(144);
  const double ratios[] = {2, 4, 6};
  for (std::size_t p : {50u, 200u}) {
    for (std::size_t k = 0; k < 30; ++k) {
      ScenarioParams params;
      params.ue_count = p;
      suite.push_back({generate_scenario({}, params, 5000 + p + k).points, ratios[k % 3]});
    }
  }
  std::size_t bad = 0;
  double ratio_sum = 0.0;
  std::size_t counted = 0;
  for (const auto& inst : suite) {
    const double r = 256.0 / inst.ratio;
    const auto sp = solve_spiral(inst.points, r);
    const auto ex = solve_exact(inst.points, r);
    if (oracle::covered(inst.points, sp.centers, r) != inst.points.size()) ++bad;
    if (sp.uav_count() < ex.uav_count()) ++bad;
    if (ex.uav_count() > 0) {
      ratio_sum += double(sp.uav_count()) / double(ex.uav_count());
      ++counted;
    }
  }
  const double mean = ratio_sum / double(counted);
  return {bad == 0 && mean <= 1.4, std::to_string(suite.size()) + " instances, " + std::to_string(bad) +
                                       " violations, mean spiral/exact " + fmt("%.3f", mean) + " (limit 1.4)"};
}

// --- 3: correction invariants -----------------------------------------------

Outcome correction_invariants() {
  std::mt19937_64 rng(31);
  std::size_t fails_a = 0, fails_b = 0, fails_c = 0;
  constexpr int kTrials = 250;

  for (int t = 0; t < kTrials; ++t) {
    // (a) pairwise-separated input passes through unchanged.
    const double eps = 1.0 + double(rng() % 8);
    std::vector<Point> sep;
    std::uniform_int_distribution<int> cell(0, 255);
    for (int tries = 0; tries < 400 && sep.size() < 60; ++tries) {
      const Point q{double(cell(rng)), double(cell(rng))};
      if (std::all_of(sep.begin(), sep.end(), [&](const Point& s) { return distance(s, q) >= eps; })) sep.push_back(q);
    }
    if (correct(sep, eps) != sep) ++fails_a;

    // (b) every input within 2 epsilon of some output.
    std::vector<Point> any;
    std::uniform_int_distribution<int> near(0, 40);
    const std::size_t n = 1 + rng() % 120;
    for (std::size_t k = 0; k < n; ++k) any.push_back({double(near(rng)), double(near(rng))});
    const auto out = correct(any, eps, (t % 2) ? std::optional<std::uint64_t>(rng()) : std::nullopt);
    for (const auto& q : any) {
      double best = 1e300;
      for (const auto& o : out) best = std::min(best, distance(q, o));
      if (best > 2 * eps) {
        ++fails_b;
        break;
      }
    }

    // (c) duplicated-UAV fixture collapses to the UAV count.
    const std::size_t n_grid = 64;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    std::uniform_int_distribution<std::size_t> c64(0, n_grid - 1);
    const std::size_t want = 1 + rng() % 12;
    for (int tries = 0; tries < 1000 && cells.size() < want; ++tries) {
      const std::pair<std::size_t, std::size_t> c{c64(rng), c64(rng)};
      if (std::all_of(cells.begin(), cells.end(), [&](const auto& o) {
            return std::hypot(double(o.first) - double(c.first), double(o.second) - double(c.second)) >= 4.0;
          }))
        cells.push_back(c);
    }
    const auto y = oracle::duplicated_template(cells, n_grid);
    const AreaSpec area{256.0, n_grid};
    const auto sol = deploy(y, area, CoverageSpec::from_ratio(area, 4), {2.0, 0.5, {}});
    if (sol.uav_count() != cells.size() || *sol.blur_count != 2 * cells.size()) ++fails_c;
  }

  // Template-derived fixture: blurred exact solutions.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AreaSpec area{256.0, 64};
    ScenarioParams params;
    params.ue_count = 200;
    const auto sc = generate_scenario(area, params, 7000 + seed);
    const auto cov = CoverageSpec::from_ratio(area, 6);
    const auto opt = solve_exact(sc.points, cov.radius);
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (const auto& c : opt.centers)
      cells.emplace_back(cell_index(std::clamp(c.x, 0.0, 256.0), area), cell_index(std::clamp(c.y, 0.0, 256.0), area));
    const auto y = oracle::duplicated_template(cells, 64);
    if (y.empty()) continue;
    if (deploy(y, area, cov, {2.0, 0.5, {}}).uav_count() != opt.uav_count()) ++fails_c;
  }

  const bool ok = fails_a == 0 && fails_b == 0 && fails_c == 0;
  return {ok, std::to_string(kTrials) + " trials each; failures a=" + std::to_string(fails_a) +
                  " b=" + std::to_string(fails_b) + " c=" + std::to_string(fails_c)};
}

// --- 4: pool loss oracle equivalence -----------------------------------------

Outcome pool_loss_equivalence() {
  std::mt19937_64 rng(41);
  std::size_t mismatch = 0, asym = 0, zero_bad = 0;
  constexpr int kPairs = 120;
  for (int t = 0; t < kPairs; ++t) {
    const std::size_t n = 8 + rng() % 57;
    std::uniform_int_distribution<int> v(0, 9);
    GridMatrix k = GridMatrix::square(n), y = GridMatrix::square(n);
    for (auto& c : k.cells()) c = v(rng) > 7 ? double(v(rng)) : 0.0;
    for (auto& c : y.cells()) c = v(rng) > 7 ? double(v(rng)) : 0.0;
    if (t % 10 == 0) y = k;
    const auto cfg = PoolLossConfig::for_grid(n);
    const auto res = pool_loss(k, y, cfg);
    for (const auto& level : res.per_level) {
      const double want = oracle::naive_pool_loss(k, y, {level.filter});
      if (level.loss != want) ++mismatch;
    }
    if (res.total != oracle::naive_pool_loss(k, y, cfg.filters)) ++mismatch;
    if (pool_loss(y, k, cfg).total != res.total) ++asym;
    if ((res.total == 0.0) != (k == y)) ++zero_bad;
    if (pool_loss(k, k, cfg).total != 0.0) ++zero_bad;
  }

  GridMatrix base = GridMatrix::square(16);
  base(4, 4) = 1;
  std::vector<double> totals;
  for (std::size_t col : {5u, 8u, 12u}) {
    GridMatrix moved = GridMatrix::square(16);
    moved(4, col) = 1;
    totals.push_back(pool_loss(base, moved).total);
  }
  const bool mono = totals[0] < totals[1] && totals[1] < totals[2];

  const bool ok = mismatch == 0 && asym == 0 && zero_bad == 0 && mono;
  return {ok, std::to_string(kPairs) + " pairs (n 8-64); mismatches=" + std::to_string(mismatch) +
                  " asymmetric=" + std::to_string(asym) + " zero-iff-equal violations=" + std::to_string(zero_bad) +
                  "; displacement 1/4/8 -> " + fmt("%g", totals[0]) + " < " + fmt("%g", totals[1]) + " < " +
                  fmt("%g", totals[2])};
}

// --- 5: complexity smoke checks ----------------------------------------------

// Generator-like output with exactly `y` lit cells: the scenario's spiral
// cover duplicated into adjacent cells, padded with random cells.
GridMatrix blurred_output(std::size_t p, std::size_t y, std::uint64_t seed) {
  const AreaSpec area{};
  ScenarioParams params;
  params.ue_count = p;
  const auto sc = generate_scenario(area, params, seed);
  const auto sp = solve_spiral(sc.points, 256.0 / 6);
  GridMatrix m = GridMatrix::square(area.grid_n, CellKind::real);
  std::size_t lit = 0;
  const auto light = [&](std::size_t row, std::size_t col) {
    if (lit < y && m(row, col) == 0.0) {
      m(row, col) = 0.9;
      ++lit;
    }
  };
  for (const auto& c : sp.centers) {
    const auto col = cell_index(std::clamp(c.x, 0.0, 256.0), area), row = cell_index(std::clamp(c.y, 0.0, 256.0), area);
    light(row, col);
    light(row, col + 1 < area.grid_n ? col + 1 : col - 1);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> cell(0, area.grid_n - 1);
  while (lit < y) light(cell(rng), cell(rng));
  return m;
}

double mean_deploy_time(const GridMatrix& y, int runs) {
  const AreaSpec area{};
  const auto cov = CoverageSpec::from_ratio(area, 6);
  const CorrectionConfig corr{2.0, 0.5, {}};
  (void)deploy(y, area, cov, corr);
  double total = 0.0;
  for (int k = 0; k < runs; ++k) total += deploy(y, area, cov, corr).wall_time_s;
  return total / runs;
}

Outcome complexity_smoke() {
  constexpr int kRuns = 50;
  const std::size_t y = 240;
  const double t400 = mean_deploy_time(blurred_output(400, y, 11), kRuns);
  const double t4000 = mean_deploy_time(blurred_output(4000, y, 11), kRuns);
  const double ratio = std::max(t400, t4000) / std::min(t400, t4000);

  std::vector<double> xs, ys;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 256.0);
  for (std::size_t n = 100; n <= 3200; n *= 2) {
    std::vector<Point> coords(n);
    for (auto& c : coords) c = {u(rng), u(rng)};
    (void)correct(coords, 2.0);
    double total = 0.0;
    for (int k = 0; k < kRuns; ++k) {
      Stopwatch sw;
      const auto out = correct(coords, 2.0);
      total += sw.seconds();
      if (out.empty()) return {false, "empty correction output"};
    }
    xs.push_back(std::log(double(n)));
    ys.push_back(std::log(total / kRuns));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= double(xs.size());
  my /= double(ys.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
  const double slope = sxy / sxx;

  const bool ok = ratio <= 2.0 && slope <= 2.3;
  return {ok, "deploy y=240: p=400 " + fmt("%.1f us", t400 * 1e6) + ", p=4000 " + fmt("%.1f us", t4000 * 1e6) +
                  " (ratio " + fmt("%.2f", ratio) + ", limit 2); correction log-log slope " + fmt("%.2f", slope) +
                  " over y=100..3200 (limit 2.3); mean of " + std::to_string(kRuns) + " runs"};
}

// --- 6: default benchmark ---------------------------------------------------

Outcome default_bench() {
  const BenchConfig cfg;
  Stopwatch timer;
  const BenchReport rep = run_bench(cfg);
  const double secs = timer.seconds();

  std::vector<std::string> problems;
  TempDir dir;
  const std::string csv = bench_csv(rep);
  detail::write_text(dir / "bench.csv", csv);
  if (csv.substr(0, csv.find('\n')) != kBenchCsvHeader) problems.push_back("CSV header drift");
  try {
    if (read_bench_csv(dir / "bench.csv").size() != rep.rows.size()) problems.push_back("CSV row count");
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }

  std::map<std::pair<double, std::size_t>, std::map<Algorithm, BenchRow>> cells;
  for (const auto& r : rep.rows) cells[{r.ratio, r.p}][r.algorithm] = r;
  std::size_t exact_cells = 0, skipped = 0;
  for (const auto& [key, algs] : cells) {
    if (algs.at(Algorithm::spiral).mean_coverage_pct != 100.0) problems.push_back("spiral coverage below 100%");
    if (auto it = algs.find(Algorithm::exact); it != algs.end()) {
      ++exact_cells;
      skipped += it->second.skipped;
      if (it->second.mean_uavs > algs.at(Algorithm::spiral).mean_uavs)
        problems.push_back("exact > spiral at R=" + format_real(key.first) + " p=" + std::to_string(key.second));
    }
  }
  for (double r : cfg.ratios) {
    const double t400 = cells[{r, 400}][Algorithm::spiral].mean_time_s;
    const double t1000 = cells[{r, 1000}][Algorithm::spiral].mean_time_s;
    if (!(t1000 > t400)) problems.push_back("spiral time does not grow with p at R=" + format_real(r));
  }
  if (secs >= 1800.0) problems.push_back("runtime over 30 min");

  std::string detail = std::to_string(rep.rows.size()) + " rows, " + std::to_string(exact_cells) +
                       " exact cells (" + std::to_string(skipped) + " budget skips), " + fmt("%.1f s", secs) +
                       " (limit 1800 s)";
  for (const auto& p : problems) detail += "; " + p;
  std::fputs(format_report_table(rep.rows).c_str(), stdout);
  return {problems.empty(), detail};
}

// --- 7: reproducible CLI output ----------------------------------------------

const std::set<std::string> kTimingKeys{"wall_time_s", "mean_time_s", "sd_time_s"};

void strip_json(nlohmann::ordered_json& j) {
  if (j.is_object()) {
    for (const auto& k : kTimingKeys) j.erase(k);
    for (auto& [_, v] : j.items()) strip_json(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_json(v);
  }
}

// Drops timing columns of a CSV or timing keys of a JSON document.
std::string strip_timing(const std::string& text) {
  if (!text.empty() && (text[0] == '{' || text[0] == '[')) {
    auto j = nlohmann::ordered_json::parse(text);
    strip_json(j);
    return j.dump();
  }
  std::istringstream in(text);
  std::string line, out;
  std::vector<bool> keep;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (keep.empty()) {
      for (const auto& f : fields) keep.push_back(!kTimingKeys.contains(f));
    }
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (i >= keep.size() || keep[i]) out += fields[i] + ",";
    out += "\n";
  }
  return out;
}

Outcome reproducible_cli() {
  const std::string cli = UAVCOVER_CLI;
  TempDir dir;
  {
    GridMatrix y = GridMatrix::square(64, CellKind::real);
    y(3, 3) = 0.9;
    y(3, 4) = 0.6;
    y(30, 20) = 0.8;
    write_matrix(dir / "y.gmx", y);
    GridMatrix k = GridMatrix::square(64);
    k(3, 3) = 1;
    k(30, 21) = 1;
    write_matrix(dir / "k.gmx", k);
  }
  const std::string d = dir.path().string();
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"gen --seed 9 --ue 1000 --out {o}/g.pts --matrix {o}/g.gmx", {"g.pts", "g.gmx"}},
      {"solve --alg exact --R 4 --ue 400 --seed 9 --centers {o}/c.pts", {"c.pts"}},
      {"solve --alg spiral --R 2 --ue 1000 --seed 9", {}},
      {"solve --alg kmeans --R 6 --ue 400 --seed 9", {}},
      {"correct --epsilon 2 " + d + "/y.gmx", {}},
      {"correct --epsilon 2 --shuffle-seed 4 " + d + "/y.gmx", {}},
      {"loss --json " + d + "/k.gmx " + d + "/y.gmx", {}},
      {"dataset --out {o}/data --cases 3 --ue 100 --R 4 --grid 64 --seed 2",
       {"data/manifest.tsv", "data/case_0.X.gmx", "data/case_1.K.gmx", "data/case_2.pts"}},
      {"bench --samples 3 --R 2,4 --ue 100,200 --seed 3 --json -", {}},
      {"bench --samples 3 --R 6 --ue 100 --seed 3 --csv -", {}},
  };
  std::size_t differing = 0;
  std::string which;
  for (const auto& [args, files] : cases) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto o = dir / ("run" + std::to_string(rep));
      std::filesystem::create_directories(o);
      std::string a = args;
      for (std::size_t pos; (pos = a.find("{o}")) != std::string::npos;) a.replace(pos, 3, o.string());
      const auto r = testing_support::run(cli + " " + a);
      std::string out = strip_timing(r.out);
      for (std::size_t pos; (pos = out.find(o.string())) != std::string::npos;) out.replace(pos, o.string().size(), "{o}");
      outputs[rep] = std::to_string(r.code) + "\n" + out;
      for (const auto& f : files) outputs[rep] += "\n" + testing_support::slurp(o / f);
    }
    if (outputs[0] != outputs[1] || outputs[0].rfind("0\n", 0) != 0) {
      ++differing;
      which += " [" + args.substr(0, args.find(' ')) + "]";
    }
  }
  return {differing == 0, std::to_string(cases.size()) + " commands rerun, " + std::to_string(differing) +
                              " differing or failing" + which};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact solver matches brute force", exact_matches_brute_force},
      {"spiral soundness", spiral_soundness},
      {"correction invariants", correction_invariants},
      {"pool loss oracle equivalence", pool_loss_equivalence},
      {"complexity smoke checks", complexity_smoke},
      {"default benchmark", default_bench},
      {"reproducible CLI output", reproducible_cli},
  };
  std::set<std::size_t> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoul(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected.empty() && !selected.contains(i + 1)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu %-34s %s  %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
