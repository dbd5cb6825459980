#include <benchmark/benchmark.h>

#include "panda/streak.hpp"
#include "panda/units.hpp"

using namespace panda;

static pulse::SpectralPulse xuv() {
  pulse::GaussianPulseSpec s;
  s.center = units::eV_to_au(100.0);
  s.fwhm_bandwidth = units::eV_to_au(9.12);
  return pulse::synthesize_gaussian(
      s, pulse::FrequencyGrid::uniform(units::eV_to_au(60.0), units::eV_to_au(140.0), 801));
}

static void BM_Action(benchmark::State& state) {
  const streak::LaserField l{0.1, 0.057, 200.0, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(streak::action(1.2, 200.0, l, 0.5, -200.0, 0.01));
}
BENCHMARK(BM_Action);

static void BM_XuvVectorPotential(benchmark::State& state) {
  const auto p = xuv();
  const double step = 2.0 * units::pi / p.grid().back() / 20.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(streak::xuv_vector_potential(p, step, streak::default_half_width(p)).values.data());
  }
}
BENCHMARK(BM_XuvVectorPotential)->Unit(benchmark::kMillisecond);

static void BM_StreakSpectrogram(benchmark::State& state) {
  const auto p = xuv();
  const streak::LaserField l{0.1, units::nm_to_omega_au(800.0), units::fs_to_au(5.0), 0.0};
  std::vector<double> eps, delays;
  for (int i = 0; i < 130; ++i) eps.push_back(units::eV_to_au(55.0 + 0.5 * i));
  for (int i = 0; i < state.range(0); ++i) delays.push_back(-110.0 + 220.0 * i / state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(streak::streak_spectrogram(p, l, units::eV_to_au(13.6057), eps, delays).values.data());
  }
}
BENCHMARK(BM_StreakSpectrogram)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
