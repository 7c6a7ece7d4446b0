// Generates one clustered scenario, places UAVs with each reference solver and
// runs a synthetic "generator output" through the correction step.

#include <cstdio>

#include "uavcover/uavcover.hpp"

int main() {
  using namespace uavcover;

  const AreaSpec area{256.0, 256};
  ScenarioParams params;
  params.ue_count = 400;
  const auto scenario = generate_scenario(area, params, 7);
  const auto coverage = CoverageSpec::from_ratio(area, 4.0);

  SolverConfig cfg;
  for (auto alg : {Algorithm::exact, Algorithm::spiral, Algorithm::kmeans}) {
    const auto sol = run_solver(alg, scenario.points, coverage.radius, cfg);
    const auto rep = evaluate(sol, scenario);
    std::printf("%-7s uavs=%2zu coverage=%.1f%% time=%.4fs%s\n", to_string(alg), rep.uav_count, rep.coverage_pct,
                rep.wall_time_s, sol.optimal ? "" : " (budget exceeded)");
  }

  // Blur the spiral template by lighting a neighbouring cell next to every UAV,
  // then let the correction step collapse the pairs again.
  const auto spiral = solve_spiral(scenario.points, coverage.radius);
  GridMatrix y = GridMatrix::square(area.grid_n, CellKind::real);
  for (const auto& c : spiral.centers) {
    const auto col = cell_index(std::clamp(c.x, 0.0, area.side), area);
    const auto row = cell_index(std::clamp(c.y, 0.0, area.side), area);
    y(row, col) = 0.9;
    y(row, col + 1 < area.grid_n ? col + 1 : col - 1) = 0.7;
  }
  const auto deployed = deploy(y, area, coverage, CorrectionConfig{2.0, 0.5, std::nullopt});
  const auto rep = evaluate(deployed, scenario);
  std::printf("deploy  blurred=%zu uavs=%zu coverage=%.1f%%\n", *rep.blur_y_count, rep.uav_count, rep.coverage_pct);

  const auto k = template_matrix(spiral.centers, area);
  std::printf("pool loss (template vs blurred) = %s\n", format_real(pool_loss(k, y).total).c_str());
}
