#include <benchmark/benchmark.h>

#include "panda/model.hpp"
#include "panda/retrieval.hpp"
#include "panda/units.hpp"

using namespace panda;

namespace {

struct Fixture {
  wavepacket::WavePacket w = wavepacket::hydrogenic_pair(2, 3, 1);
  pulse::SpectralPulse p = make_pulse();
  std::vector<double> eps = make_energies();
  model::PacketChannels ch = model::hydrogenic_channels(w, eps);

  static pulse::SpectralPulse make_pulse() {
    pulse::GaussianPulseSpec s;
    s.center = units::eV_to_au(60.0);
    s.fwhm_bandwidth = units::eV_to_au(12.0);
    s.gdd = units::as2_to_au(4000.0);
    return pulse::synthesize_gaussian(
        s, pulse::FrequencyGrid::uniform(units::eV_to_au(12.0), units::eV_to_au(108.0), 1601));
  }
  static std::vector<double> make_energies() {
    std::vector<double> e;
    for (int i = 0; i < 256; ++i) e.push_back(units::eV_to_au(40.0 + 0.1 * i));
    return e;
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

}  // namespace

static void BM_GroupDelay(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(pulse::group_delay(f.p).data());
}
BENCHMARK(BM_GroupDelay);

static void BM_Spectrogram(benchmark::State& state) {
  const auto& f = fixture();
  const auto delays = model::default_delays(f.w, 8, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto s = model::spectrogram(f.w, f.p, f.ch, f.eps, delays);
    benchmark::DoNotOptimize(s.values.data());
  }
}
BENCHMARK(BM_Spectrogram)->Arg(3)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_AngleResolvedSpectrogram(benchmark::State& state) {
  const auto& f = fixture();
  const auto delays = model::default_delays(f.w);
  for (auto _ : state) {
    const auto s = model::spectrogram(f.w, f.p, f.ch, f.eps, delays, 0.6);
    benchmark::DoNotOptimize(s.values.data());
  }
}
BENCHMARK(BM_AngleResolvedSpectrogram)->Unit(benchmark::kMillisecond);

static void BM_Retrieve(benchmark::State& state) {
  const auto& f = fixture();
  auto s = model::spectrogram(f.w, f.p, f.ch, f.eps, model::default_delays(f.w));
  model::add_noise(s, 0.02, 1);
  for (auto _ : state) benchmark::DoNotOptimize(retrieval::retrieve(s).group_delay.data());
}
BENCHMARK(BM_Retrieve)->Unit(benchmark::kMillisecond);

static void BM_AngleIntegration(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(model::angle_integrated_probability(f.w, f.p, f.ch, f.eps[100], 10.0));
  }
}
BENCHMARK(BM_AngleIntegration);

BENCHMARK_MAIN();
