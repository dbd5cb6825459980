#include "panda/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>
#include <fmt/core.h>

#include "panda/atomic/angular.hpp"
#include "panda/atomic/radial.hpp"
#include "panda/errors.hpp"
#include "panda/parallel.hpp"
#include "panda/retrieval.hpp"
#include "panda/units.hpp"

namespace panda::model {

namespace {

constexpr double pi = std::numbers::pi;

const atomic::ChannelTable& table(const PacketChannels& ch, int j) { return j == 0 ? ch.first : ch.second; }

void check_tables(const wavepacket::WavePacket& w, const PacketChannels& ch) {
  const wavepacket::BoundState* s[2] = {&w.state1(), &w.state2()};
  for (int j = 0; j < 2; ++j) {
    const auto& t = table(ch, j);
    if (t.l() != s[j]->l || t.m() != s[j]->m) {
      throw DomainError(fmt::format("channel table {} is for (l={}, m={}) but the state is (l={}, m={})", j + 1,
                                    t.l(), t.m(), s[j]->l, s[j]->m));
    }
  }
}

// Cross term 2 c1 c2 E1 E2* X, X the channel product, written as
// b cos(dw tau + theta0) with arg X folded into (-pi/2, pi/2].
BeatTerms combine(const wavepacket::WavePacket& w, const pulse::SpectralPulse& p, double epsilon, double m1sq,
                  double m2sq, std::complex<double> x) {
  const double wf1 = epsilon - w.state1().energy;
  const double wf2 = epsilon - w.state2().energy;
  const double e1 = pulse::sample_magnitude(p, wf1);
  const double e2 = pulse::sample_magnitude(p, wf2);
  const double c1 = w.state1().amplitude;
  const double c2 = w.state2().amplitude;

  BeatTerms t;
  t.a1 = e1 * e1 * c1 * c1 * m1sq;
  t.a2 = e2 * e2 * c2 * c2 * m2sq;
  double psi = std::abs(x) > 0.0 ? std::arg(x) : 0.0;
  const int flipped = retrieval::fold_half_period(psi);
  t.b = (flipped ? -2.0 : 2.0) * c1 * c2 * e1 * e2 * std::abs(x);
  t.theta0 = pulse::sample_phase(p, wf1) - pulse::sample_phase(p, wf2) + psi;
  return t;
}

}  // namespace

double BeatTerms::probability(double dw, double tau) const { return a1 + a2 + b * std::cos(dw * tau + theta0); }

double BeatTerms::contrast() const {
  const double s = a1 + a2;
  return s > 0.0 ? std::abs(b) / s : 0.0;
}

BeatTerms beat_terms(const wavepacket::WavePacket& w, const pulse::SpectralPulse& p, const PacketChannels& ch,
                     double epsilon) {
  check_tables(w, ch);
  double m1sq = 0.0;
  double m2sq = 0.0;
  std::complex<double> x = 0.0;
  const bool same_m = ch.first.m() == ch.second.m();
  for (int L : ch.first.final_ls()) {
    const auto d1 = ch.first.dipole(L, epsilon);
    m1sq += std::norm(d1);
    if (same_m && ch.second.has_channel(L)) x += d1 * std::conj(ch.second.dipole(L, epsilon));
  }
  for (int L : ch.second.final_ls()) m2sq += std::norm(ch.second.dipole(L, epsilon));
  return combine(w, p, epsilon, m1sq, m2sq, x);
}

std::complex<double> AngularEmission::amplitude1() const {
  std::complex<double> s = 0.0;
  for (auto v : first) s += v;
  return s;
}

std::complex<double> AngularEmission::amplitude2() const {
  std::complex<double> s = 0.0;
  for (auto v : second) s += v;
  return s;
}

AngularEmission angular_emission(const PacketChannels& ch, double epsilon, double theta) {
  if (ch.first.m() != ch.second.m()) throw DomainError("angular_emission: states must share m");
  AngularEmission e;
  e.theta = theta;
  const int m = ch.first.m();
  const int l = std::max(ch.first.l(), ch.second.l());
  for (int L = 0; L <= l + 1; ++L) {
    const bool allowed1 = std::abs(L - ch.first.l()) == 1 && std::abs(m) <= L;
    const bool allowed2 = std::abs(L - ch.second.l()) == 1 && std::abs(m) <= L;
    if (!allowed1 && !allowed2) continue;
    if ((allowed1 && !ch.first.has_channel(L)) || (allowed2 && !ch.second.has_channel(L))) {
      throw DomainError(fmt::format("angular_emission: missing L={} channel", L));
    }
    // (-i)^L
    const std::complex<double> iL[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    const double y = atomic::spherical_harmonic(L, m, theta);
    auto term = [&](const atomic::ChannelTable& t, bool allowed) -> std::complex<double> {
      if (!allowed) return 0.0;
      const double eta = t.amplitude(L, epsilon).phase;
      return iL[L % 4] * std::polar(1.0, eta) * y * t.dipole(L, epsilon);
    };
    e.L.push_back(L);
    e.first.push_back(term(ch.first, allowed1));
    e.second.push_back(term(ch.second, allowed2));
  }
  return e;
}

BeatTerms angle_resolved_terms(const wavepacket::WavePacket& w, const pulse::SpectralPulse& p,
                               const PacketChannels& ch, double epsilon, double theta) {
  check_tables(w, ch);
  const auto e = angular_emission(ch, epsilon, theta);
  const auto a1 = e.amplitude1();
  const auto a2 = e.amplitude2();
  return combine(w, p, epsilon, std::norm(a1), std::norm(a2), a1 * std::conj(a2));
}

std::optional<double> zero_delay_angle(const wavepacket::WavePacket& w, const pulse::SpectralPulse& p,
                                       const PacketChannels& ch, double epsilon, double lo, double hi) {
  const BeatTerms ref = beat_terms(w, p, ch, epsilon);
  auto f = [&](double theta) {
    double d = angle_resolved_terms(w, p, ch, epsilon, theta).theta0 - ref.theta0;
    retrieval::fold_half_period(d);
    return d;
  };
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  std::uintmax_t iters = 100;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(48),
                                                   iters);
  return 0.5 * (r.first + r.second);
}

double angle_integrated_probability(const wavepacket::WavePacket& w, const pulse::SpectralPulse& p,
                                    const PacketChannels& ch, double epsilon, double tau) {
  const double dw = wavepacket::splitting(w);
  auto f = [&](double x) {
    return angle_resolved_terms(w, p, ch, epsilon, std::acos(x)).probability(dw, tau);
  };
  return 2.0 * pi * boost::math::quadrature::gauss<double, 64>::integrate(f, -1.0, 1.0);
}

std::vector<double> Spectrogram::column(std::size_t i_energy) const {
  std::vector<double> c(delays.size());
  for (std::size_t i = 0; i < delays.size(); ++i) c[i] = at(i, i_energy);
  return c;
}

std::vector<double> default_delays(const wavepacket::WavePacket& w, int per_period, int periods, double t0) {
  if (per_period < 1 || periods < 1) throw ConfigurationError("default_delays: need positive counts");
  const double step = wavepacket::beat_period(w) / per_period;
  std::vector<double> d(static_cast<std::size_t>(per_period * periods));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = t0 + step * static_cast<double>(i);
  return d;
}

void check_delay_sampling(std::span<const double> delays, double dw) {
  if (delays.size() < 3) throw ConfigurationError("delay grid needs at least 3 samples");
  double max_step = 0.0;
  for (std::size_t i = 1; i < delays.size(); ++i) {
    const double h = delays[i] - delays[i - 1];
    if (!(h > 0.0)) throw ConfigurationError("delay grid must be strictly increasing");
    max_step = std::max(max_step, h);
  }
  const double per_period = 2.0 * pi / dw / max_step;
  if (per_period < 6.0 * (1.0 - 1e-9)) {
    throw ConfigurationError(
        fmt::format("delay grid has {:.3g} samples per beat period, at least 6 are required", per_period));
  }
}

Spectrogram spectrogram(const wavepacket::WavePacket& w, const pulse::SpectralPulse& p, const PacketChannels& ch,
                        std::span<const double> energies, std::span<const double> delays,
                        std::optional<double> theta) {
  const double dw = wavepacket::splitting(w);
  check_delay_sampling(delays, dw);
  if (energies.empty()) throw ConfigurationError("spectrogram: empty energy grid");

  Spectrogram s;
  s.energies.assign(energies.begin(), energies.end());
  s.delays.assign(delays.begin(), delays.end());
  s.splitting = dw;
  s.effective_binding = wavepacket::effective_binding(w);
  s.theta = theta;
  s.values.assign(delays.size() * energies.size(), 0.0);

  const std::size_t ne = energies.size();
  parallel_for(ne, [&](std::size_t ie) {
    const BeatTerms t = theta ? angle_resolved_terms(w, p, ch, energies[ie], *theta)
                              : beat_terms(w, p, ch, energies[ie]);
    for (std::size_t id = 0; id < delays.size(); ++id) {
      s.values[id * ne + ie] = std::max(0.0, t.probability(dw, delays[id]));
    }
  });

  s.meta["wave_packet"] = describe(w);
  s.meta["pulse"] = describe(p);
  s.meta["splitting_eV"] = units::au_to_eV(dw);
  s.meta["beat_period_fs"] = units::au_to_fs(wavepacket::beat_period(w));
  s.meta["effective_binding_eV"] = units::au_to_eV(s.effective_binding);
  s.meta["detection"] = theta ? "angle_resolved" : "angle_integrated";
  if (theta) s.meta["theta_deg"] = units::rad_to_deg(*theta);
  return s;
}

void add_noise(Spectrogram& s, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw ConfigurationError("noise sigma must be >= 0");
  if (sigma == 0.0) return;
  const double peak = *std::max_element(s.values.begin(), s.values.end());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sigma * peak);
  for (double& v : s.values) v = std::max(0.0, v + g(rng));
  s.meta["noise"] = {{"sigma_rel", sigma}, {"seed", seed}};
}

namespace {

DelayCurve finish_curve(std::vector<double> energies, std::vector<double> theta, std::vector<double> contrast,
                        double dw, double threshold) {
  DelayCurve c;
  c.energies = std::move(energies);
  c.contrast = std::move(contrast);
  const std::size_t n = c.energies.size();
  c.phase.resize(n);
  c.mask.resize(n);
  std::vector<int> fold(n);
  for (std::size_t i = 0; i < n; ++i) {
    double ph = theta[i];
    fold[i] = retrieval::fold_half_period(ph);
    c.phase[i] = ph;
    c.mask[i] = !(c.contrast[i] >= threshold);
  }
  const auto u = retrieval::unwrap(c.phase, c.mask, pi);
  c.delay = retrieval::to_group_delay(u.phase, dw);
  c.branch.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.branch[i] = (fold[i] + u.branch[i]) % 2;
  return c;
}

}  // namespace

DelayCurve panda_delay(const Spectrogram& s, double threshold) {
  const auto fits = retrieval::extract_beat_phase(s, s.splitting);
  std::vector<double> theta(fits.size());
  std::vector<double> contrast(fits.size());
  for (std::size_t i = 0; i < fits.size(); ++i) {
    theta[i] = fits[i].phase;
    contrast[i] = fits[i].contrast;
  }
  return finish_curve(s.energies, std::move(theta), std::move(contrast), s.splitting, threshold);
}

DelayCurve panda_delay(std::span<const double> energies, std::span<const BeatTerms> terms, double dw,
                       double threshold) {
  if (energies.size() != terms.size()) throw DomainError("panda_delay: size mismatch");
  std::vector<double> theta(terms.size());
  std::vector<double> contrast(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    // a negative b is a cosine shifted by pi
    theta[i] = terms[i].theta0 + (terms[i].b < 0.0 ? pi : 0.0);
    theta[i] = std::remainder(theta[i], 2.0 * pi);
    contrast[i] = terms[i].contrast();
  }
  return finish_curve({energies.begin(), energies.end()}, std::move(theta), std::move(contrast), dw, threshold);
}

PacketChannels hydrogenic_channels(const wavepacket::WavePacket& w, std::span<const double> energies, double Z) {
  if (energies.empty()) throw DomainError("hydrogenic_channels: empty energy grid");
  const atomic::CentralPotential pot{Z, 0.0, 1.0};
  const auto grid = atomic::RadialGrid::for_energy(*std::max_element(energies.begin(), energies.end()));
  auto build = [&](const wavepacket::BoundState& s) {
    const auto orbital = atomic::solve_bound(pot, s.n, s.l, grid);
    return atomic::ChannelTable::from_potential(pot, orbital, s.m, energies, grid);
  };
  return {build(w.state1()), build(w.state2())};
}

nlohmann::json describe(const wavepacket::WavePacket& w) {
  nlohmann::json states = nlohmann::json::array();
  for (const auto* s : {&w.state1(), &w.state2()}) {
    nlohmann::json j = {{"n", s->n}, {"l", s->l}, {"m", s->m}, {"energy_eV", units::au_to_eV(s->energy)},
                        {"amplitude", s->amplitude}};
    if (s->two_j) j["j"] = 0.5 * *s->two_j;
    states.push_back(j);
  }
  return {{"states", states}, {"lifetime_inv", w.lifetime_inverse()}};
}

nlohmann::json describe(const pulse::SpectralPulse& p) {
  return {{"centroid_eV", units::au_to_eV(pulse::centroid_frequency(p))},
          {"fwhm_eV", units::au_to_eV(pulse::intensity_fwhm(p))},
          {"group_delay_spread_as", units::au_to_as(pulse::group_delay_spread(p))},
          {"grid_eV", {units::au_to_eV(p.grid().front()), units::au_to_eV(p.grid().back())}},
          {"points", p.grid().size()},
          {"cep_rad", p.cep()}};
}

}  // namespace panda::model
