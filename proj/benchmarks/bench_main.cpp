#include <benchmark/benchmark.h>

#include <random>

#include "deliver/geometry.hpp"
#include "deliver/planning.hpp"
#include "deliver/simulation.hpp"

using namespace deliver;

namespace {

std::vector<Site> scatter(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 20.0);
  std::vector<Site> sites;
  for (int i = 0; i < n; ++i) sites.push_back({RobotId{static_cast<std::uint32_t>(i)}, {coord(rng), coord(rng)}});
  return sites;
}

void BM_ComputeVoronoi(benchmark::State& state) {
  const auto sites = scatter(static_cast<int>(state.range(0)), 1);
  const Workspace ws = unit_grid_workspace(20, 20);
  for (auto _ : state) benchmark::DoNotOptimize(compute_voronoi(sites, ws));
}
BENCHMARK(BM_ComputeVoronoi)->Arg(3)->Arg(10)->Arg(30);

void BM_Locate(benchmark::State& state) {
  const auto sites = scatter(static_cast<int>(state.range(0)), 2);
  const VoronoiDiagram d = compute_voronoi(sites, unit_grid_workspace(20, 20));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(0.0, 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(locate({coord(rng), coord(rng)}, d));
}
BENCHMARK(BM_Locate)->Arg(3)->Arg(12);

void BM_AStar(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  OccupancyGrid grid(unit_grid_workspace(side, side));
  for (int r = 1; r < side - 1; r += 4) {
    for (int c = 0; c < side - 2; ++c) grid.set_blocked({(r / 4) % 2 == 0 ? c : c + 2, r});
  }
  for (auto _ : state) benchmark::DoNotOptimize(find_path(grid, {0, 0}, {side - 1, side - 1}));
}
BENCHMARK(BM_AStar)->Arg(20)->Arg(100);

void BM_RunTrial(benchmark::State& state) {
  SimConfig config;
  std::mt19937_64 rng(trial_seed(9, static_cast<int>(state.range(0)), 0));
  const TrialSetup setup = generate_trial(static_cast<int>(state.range(0)), config, rng);
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(setup.robots, setup.task, config));
}
BENCHMARK(BM_RunTrial)->Arg(1)->Arg(5)->Arg(10);

}  // namespace
BENCHMARK_MAIN();
