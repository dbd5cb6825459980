#include <benchmark/benchmark.h>

#include "panda/atomic/angular.hpp"
#include "panda/atomic/channels.hpp"
#include "panda/atomic/radial.hpp"

using namespace panda::atomic;

static void BM_Wigner3j(benchmark::State& state) {
  const int j = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double s = 0.0;
    for (int m = -j; m <= j; ++m) s += wigner_3j(j, j, j, m, -m, 0);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_Wigner3j)->Arg(2)->Arg(10)->Arg(40);

static void BM_ContinuumSolve(benchmark::State& state) {
  const double eps = static_cast<double>(state.range(0)) / 10.0;
  const CentralPotential pot{1.0, 1.0, 2.0};
  const auto grid = RadialGrid::for_energy(eps);
  for (auto _ : state) benchmark::DoNotOptimize(solve_continuum(pot, eps, 2, grid).phase);
  state.counters["points"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_ContinuumSolve)->Arg(5)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);

static void BM_BoundShooting(benchmark::State& state) {
  const CentralPotential pot{1.0, 2.0, 1.5};
  const RadialGrid grid(0.005, 80.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_bound(pot, 3, 1, grid).energy);
}
BENCHMARK(BM_BoundShooting)->Unit(benchmark::kMillisecond);

static void BM_ChannelTable(benchmark::State& state) {
  const CentralPotential pot{1.0, 0.0, 1.0};
  std::vector<double> eps;
  for (int i = 0; i < state.range(0); ++i) eps.push_back(0.5 + 0.02 * i);
  const auto grid = RadialGrid::for_energy(eps.back());
  const auto orbital = solve_bound(pot, 3, 1, grid);
  for (auto _ : state) {
    const auto t = ChannelTable::from_potential(pot, orbital, 0, eps, grid);
    benchmark::DoNotOptimize(t.energies().data());
  }
}
BENCHMARK(BM_ChannelTable)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
