// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include <fmt/core.h>
#include <fmt/ranges.h>

#include "panda/atomic/angular.hpp"
#include "panda/atomic/channels.hpp"
#include "panda/atomic/cross_section.hpp"
#include "panda/atomic/fano.hpp"
#include "panda/atomic/radial.hpp"
#include "panda/model.hpp"
#include "panda/retrieval.hpp"
#include "panda/spin_orbit.hpp"
#include "panda/streak.hpp"
#include "panda/units.hpp"

using namespace panda;
using units::au_to_as;
using units::eV_to_au;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

pulse::SpectralPulse gaussian(double center_eV, double fwhm_eV, double gdd_as2, std::size_t points = 801) {
  pulse::GaussianPulseSpec s;
  s.center = eV_to_au(center_eV);
  s.fwhm_bandwidth = eV_to_au(fwhm_eV);
  s.gdd = units::as2_to_au(gdd_as2);
  const double lo = center_eV - 4 * fwhm_eV, hi = center_eV + 4 * fwhm_eV;
  return pulse::synthesize_gaussian(s, pulse::FrequencyGrid::uniform(eV_to_au(lo), eV_to_au(hi), points));
}

// transform-limited, spectrally flat pulse over [lo, hi] eV
pulse::SpectralPulse flat(double lo_eV, double hi_eV, std::size_t points) {
  auto g = pulse::FrequencyGrid::uniform(eV_to_au(lo_eV), eV_to_au(hi_eV), points);
  return pulse::SpectralPulse(g, std::vector<double>(points, 1.0), std::vector<double>(points, 0.0));
}

std::vector<double> linspace_eV(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = eV_to_au(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return v;
}

double delay_of(const model::BeatTerms& t, double dw) {
  double th = t.theta0;
  retrieval::fold_half_period(th);
  return th / dw;
}

// 1. chirped Gaussian, 0.27 eV splitting, fitted from the spectrogram
Outcome round_trip() {
  const double gdd = 5000.0;
  const auto p = gaussian(100.0, 5.0, gdd, 1601);
  // hydrogen 2p/3p orbitals with the levels pulled to a 0.27 eV splitting
  const wavepacket::BoundState s1{2, 1, 0, {}, eV_to_au(-3.4014), std::sqrt(0.5)};
  const wavepacket::BoundState s2{3, 1, 0, {}, eV_to_au(-3.4014 + 0.27), std::sqrt(0.5)};
  const wavepacket::WavePacket w(s1, s2);
  const double ip = wavepacket::effective_binding(w);
  const auto eps = linspace_eV(100.0 - 6.0 - units::au_to_eV(ip), 100.0 + 6.0 - units::au_to_eV(ip), 121);
  const auto ch = model::hydrogenic_channels(w, eps);
  const auto s = model::spectrogram(w, p, ch, eps, model::default_delays(w));
  const auto r = retrieval::retrieve(s);

  // analytic G (w - w_X) at the mean frequency of each column
  std::vector<double> diff, truth;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (r.mask[i] || r.bridged[i]) continue;
    truth.push_back(units::as2_to_au(gdd) * (r.omega[i] - eV_to_au(100.0)));
    diff.push_back(r.group_delay[i] - truth.back());
  }
  if (diff.size() < 10) return {false, "too few unmasked columns"};
  double mean = 0.0;
  for (double d : diff) mean += d;
  mean /= static_cast<double>(diff.size());
  double rms = 0.0;
  for (double d : diff) rms += (d - mean) * (d - mean);
  rms = std::sqrt(rms / static_cast<double>(diff.size()));
  const auto [lo, hi] = std::minmax_element(truth.begin(), truth.end());
  const double span = *hi - *lo;
  return {rms < 0.01 * span, fmt::format("rms {:.3g} as, span {:.4g} as, ratio {:.3g} (limit 0.01), {} columns",
                                         au_to_as(rms), au_to_as(span), rms / span, diff.size())};
}

// 2. angle-integrated delay of a hydrogenic 2p/3p packet over 5-100 eV
Outcome angle_integrated() {
  const auto w = wavepacket::hydrogenic_pair(2, 3, 1);
  const auto eps = linspace_eV(5.0, 100.0, 96);
  const auto ch = model::hydrogenic_channels(w, eps);
  const auto p = flat(1.0, 110.0, 2181);
  const double dw = wavepacket::splitting(w);
  double worst = 0.0;
  for (double e : eps) worst = std::max(worst, std::abs(delay_of(model::beat_terms(w, p, ch, e), dw)));
  return {au_to_as(worst) < 0.1, fmt::format("max |delay| {:.3g} as over {} energies (limit 0.1 as)", au_to_as(worst),
                                             eps.size())};
}

// 3. zero of the angle-resolved delay at the P2 root, sign structure at 0 and 80 deg
Outcome magic_angle() {
  const auto w = wavepacket::hydrogenic_pair(2, 3, 1);
  const auto eps = linspace_eV(5.0, 100.0, 20);
  const auto ch = model::hydrogenic_channels(w, eps);
  const auto p = flat(1.0, 110.0, 2181);
  const double dw = wavepacket::splitting(w);
  const double magic = std::acos(1.0 / std::sqrt(3.0));
  double worst = 0.0;
  bool all_found = true;
  bool opposite = false;
  for (double e : eps) {
    const auto root = model::zero_delay_angle(w, p, ch, e, units::deg_to_rad(45.0), units::deg_to_rad(65.0));
    if (!root) {
      all_found = false;
      continue;
    }
    worst = std::max(worst, std::abs(units::rad_to_deg(*root - magic)));
    const double d0 = delay_of(model::angle_resolved_terms(w, p, ch, e, 0.0), dw);
    const double d80 = delay_of(model::angle_resolved_terms(w, p, ch, e, units::deg_to_rad(80.0)), dw);
    if (std::abs(au_to_as(d0)) > 0.1 && std::abs(au_to_as(d80)) > 0.1 && d0 * d80 < 0.0) opposite = true;
  }
  return {all_found && worst < 0.5 && opposite,
          fmt::format("max |theta - 54.7356| {:.3g} deg (limit 0.5), roots at all energies: {}, opposite signs at "
                      "0/80 deg: {}",
                      worst, all_found ? "yes" : "no", opposite ? "yes" : "no")};
}

// 4. shared resonance with different real q's leaves the folded beat phase alone
Outcome fano_immunity() {
  const auto w = wavepacket::hydrogenic_pair(2, 3, 1);
  const auto p = gaussian(60.0, 12.0, 3000.0, 1201);
  const auto eps = linspace_eV(45.0, 68.0, 93);
  const auto ch = model::hydrogenic_channels(w, eps);
  const atomic::FanoParams f1{2.0, eV_to_au(57.0), eV_to_au(1.0)};
  const atomic::FanoParams f2{-1.5, eV_to_au(57.0), eV_to_au(1.0)};
  const model::PacketChannels dressed{ch.first.with_fano(f1), ch.second.with_fano(f2)};
  const auto delays = model::default_delays(w);
  const auto a = retrieval::retrieve(model::spectrogram(w, p, ch, eps, delays));
  const auto b = retrieval::retrieve(model::spectrogram(w, p, dressed, eps, delays));
  double worst = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (a.mask[i] || b.mask[i]) continue;
    double d = b.beat_phase[i] - a.beat_phase[i];
    retrieval::fold_half_period(d);  // a sign of (q1 + e)(q2 + e) is a branch, not a phase
    worst = std::max(worst, std::abs(d));
    ++n;
  }
  return {n > 0 && worst < 1e-10, fmt::format("max |phase change| {:.3g} rad over {} columns (limit 1e-10)", worst, n)};
}

// 5. brute-force (j', j, m) sum against the closed form
Outcome closed_form() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-pi, pi);
  double worst = 0.0;
  double asym = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double theta = u(rng);
    const auto cf = model::so_closed_form(theta);
    for (int two_m : {1, -1}) {
      const auto a = model::so_amplitudes(1.0, std::polar(1.0, theta), {}, two_m);
      const double s = std::norm(a.total(0));
      const double d = std::norm(a.total(1)) + std::norm(a.total(2));
      worst = std::max({worst, std::abs(s / cf.s - 1.0), std::abs(d / cf.d - 1.0)});
    }
    const auto up = model::so_amplitudes(1.0, std::polar(1.0, theta), {}, 1);
    const auto down = model::so_amplitudes(1.0, std::polar(1.0, theta), {}, -1);
    for (int ch = 0; ch < 3; ++ch) asym = std::max(asym, std::abs(std::norm(up.total(ch)) - std::norm(down.total(ch))));
  }
  return {worst < 1e-10 && asym < 1e-14,
          fmt::format("max relative deviation {:.3g} (limit 1e-10), m asymmetry {:.3g}", worst, asym)};
}

// 6. spin-orbit beat period
Outcome so_period() {
  const double period = units::au_to_fs(2.0 * pi / eV_to_au(7.15517e-3));
  return {std::abs(period - 577.998) < 0.001, fmt::format("period {:.6f} fs (target 577.998 +- 0.001)", period)};
}

// 7. hydrogen cross-section scaling
Outcome hydrogen_scaling() {
  const atomic::CentralPotential h{1.0, 0.0, 1.0};
  const auto grid = atomic::RadialGrid::for_energy(eV_to_au(800.0));
  const auto s1 = atomic::solve_bound(h, 1, 0, grid);
  std::vector<double> eps;
  for (int i = 0; i <= 10; ++i) eps.push_back(eV_to_au(300.0 + 50.0 * i) + s1.energy);
  const auto xs = atomic::cross_section(h, s1, eps, grid);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& x : xs) {
    const double lx = std::log(x.photon_energy), ly = std::log(x.sigma_Mb);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(xs.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  const auto g2 = atomic::RadialGrid::for_energy(eV_to_au(200.0));
  const auto p2 = atomic::solve_bound(h, 2, 1, g2);
  const auto p3 = atomic::solve_bound(h, 3, 1, g2);
  const double x2 = atomic::cross_section(h, p2, std::vector<double>{eV_to_au(200.0) + p2.energy}, g2)[0].sigma_Mb;
  const double x3 = atomic::cross_section(h, p3, std::vector<double>{eV_to_au(200.0) + p3.energy}, g2)[0].sigma_Mb;
  const double ratio = x3 / x2;
  const bool ok = std::abs(slope + 3.5) <= 0.1 && std::abs(ratio - 0.30) <= 0.03;
  return {ok, fmt::format("slope {:.4f} (target -3.5 +- 0.1), sigma_3p/sigma_2p {:.4f} (target 0.30 +- 0.03)", slope,
                          ratio)};
}

// 8. streaking centroids against the classical law
Outcome streaking() {
  const auto xuv = gaussian(100.0, 4.0 * std::log(2.0) / units::as_to_au(200.0) * units::hartree_eV, 0.0, 801);
  const streak::LaserField laser{0.1, units::nm_to_omega_au(800.0), units::fs_to_au(5.0), 0.0};
  const double ip = eV_to_au(13.6057);
  const auto eps = linspace_eV(55.0, 120.0, 131);
  const double period = 2.0 * pi / laser.omega;
  std::vector<double> delays;
  for (int i = 0; i <= 16; ++i) delays.push_back(-period + period * i / 8.0);
  const streak::StreakOptions opt{std::nullopt, std::nullopt, 1.0};
  const auto c = streak::centroids(streak::streak_spectrogram(xuv, laser, ip, eps, delays, opt));
  const streak::LaserField off{0.0, laser.omega, laser.fwhm, 0.0};
  const double free = streak::centroids(streak::streak_spectrogram(xuv, off, ip, eps, {delays.data(), 1}, opt))[0];
  const double p0 = std::sqrt(2.0 * (eV_to_au(100.0) - ip));

  double amplitude = 0.0;
  std::vector<double> classical, shift, al;
  for (std::size_t i = 0; i < delays.size(); ++i) {
    classical.push_back(streak::classical_energy(p0, laser, delays[i]) - 0.5 * p0 * p0);
    shift.push_back(c[i] - free);
    al.push_back(laser.vector_potential(delays[i]));
    amplitude = std::max(amplitude, std::abs(classical.back()));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < delays.size(); ++i) worst = std::max(worst, std::abs(shift[i] - classical[i]));
  // phase lock: the shift follows -p0 A_L(t)
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < delays.size(); ++i) {
    sxy += shift[i] * al[i];
    sxx += al[i] * al[i];
    syy += shift[i] * shift[i];
  }
  const double corr = sxy / std::sqrt(sxx * syy);
  return {worst < 0.05 * amplitude && corr < -0.99,
          fmt::format("max deviation {:.3g} of the streaking amplitude {:.3g} eV (limit 0.05), corr(shift, A_L) {:.4f}",
                      worst / amplitude, units::au_to_eV(amplitude), corr)};
}

// 9. invariant suite
Outcome invariants() {
  std::vector<std::string> failed;
  std::mt19937_64 rng(9);

  // forward model: P >= 0, |B| <= A1 + A2, periodicity in the delay
  {
    const auto w = wavepacket::hydrogenic_pair(2, 3, 1);
    const auto p = gaussian(60.0, 12.0, 4000.0, 1201);
    const auto eps = linspace_eV(45.0, 68.0, 24);
    const auto ch = model::hydrogenic_channels(w, eps);
    const double dw = wavepacket::splitting(w);
    std::uniform_real_distribution<double> tau(-2000.0, 2000.0);
    bool pos = true, bound = true, periodic = true, sum_rule = true;
    for (double e : eps) {
      const auto t = model::beat_terms(w, p, ch, e);
      bound &= std::abs(t.b) <= t.a1 + t.a2;
      for (int k = 0; k < 10; ++k) {
        const double x = tau(rng);
        pos &= t.probability(dw, x) >= 0.0;
        periodic &= std::abs(t.probability(dw, x + 2 * pi / dw) - t.probability(dw, x)) <=
                    1e-9 * (t.a1 + t.a2);
      }
      const double integral = model::angle_integrated_probability(w, p, ch, e, 17.0);
      sum_rule &= std::abs(integral - t.probability(dw, 17.0)) <= 1e-8 * std::max(1e-300, t.a1 + t.a2);
    }
    if (!pos) failed.push_back("P >= 0");
    if (!bound) failed.push_back("|B| <= A1 + A2");
    if (!periodic) failed.push_back("delay periodicity");
    if (!sum_rule) failed.push_back("angle-integration sum rule");
  }
  // Parseval
  {
    const auto p = gaussian(100.0, 5.0, 3000.0, 1201);
    const double tl = 4.0 * std::log(2.0) / eV_to_au(5.0);
    const double hw = 12.0 * tl + 4.0 * pulse::group_delay_spread(p);
    const auto f = pulse::to_time_domain(p, pulse::uniform_times(-hw, hw, 16001));
    if (std::abs(pulse::temporal_energy(f) / pulse::spectral_energy(p) - 1.0) > 1e-6) failed.push_back("Parseval");
  }
  // 3j orthogonality on 200 random triples
  {
    using atomic::HalfInteger;
    std::uniform_int_distribution<int> twice_j(0, 16);
    double worst = 0.0;
    for (int n = 0; n < 200; ++n) {
      const int a = twice_j(rng), b = twice_j(rng);
      std::uniform_int_distribution<int> pick(0, (a + b - std::abs(a - b)) / 2);
      const int c = std::abs(a - b) + 2 * pick(rng), cp = std::abs(a - b) + 2 * pick(rng);
      std::uniform_int_distribution<int> mp(0, std::min(c, cp));
      const int m3 = -std::min(c, cp) + 2 * mp(rng);
      double sum = 0.0;
      for (int m1 = -a; m1 <= a; m1 += 2) {
        const int m2 = -m3 - m1;
        if (std::abs(m2) > b) continue;
        auto h = HalfInteger::from_twice;
        sum += atomic::wigner_3j(h(a), h(b), h(c), h(m1), h(m2), h(m3)) *
               atomic::wigner_3j(h(a), h(b), h(cp), h(m1), h(m2), h(m3));
      }
      worst = std::max(worst, std::abs((c + 1) * sum - (c == cp ? 1.0 : 0.0)));
    }
    if (worst > 1e-12) failed.push_back("3j orthogonality");
  }
  // continuum normalization against the Coulomb asymptote
  {
    const atomic::CentralPotential pot{1.0, 1.0, 2.0};
    double worst = 0.0;
    for (double e : {0.1, 0.5, 2.0, 10.0}) {
      const auto grid = atomic::RadialGrid::for_energy(e);
      for (int L = 0; L <= 3; ++L) worst = std::max(worst, atomic::solve_continuum(pot, e, L, grid).amplitude_residual);
    }
    if (worst > 1e-4) failed.push_back("continuum normalization");
  }
  return {failed.empty(), failed.empty() ? std::string("all invariants hold")
                                         : fmt::format("violated: {}", fmt::join(failed, ", "))};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double time_limit_s;  // 0: none
  };
  const std::vector<Criterion> criteria = {
      {1, "round-trip retrieval", round_trip, 10.0},
      {2, "angle-integrated delay vanishes", angle_integrated, 0.0},
      {3, "magic angle", magic_angle, 0.0},
      {4, "Fano immunity", fano_immunity, 0.0},
      {5, "fine-structure closed form", closed_form, 0.0},
      {6, "spin-orbit beat period", so_period, 0.0},
      {7, "hydrogen cross-section scaling", hydrogen_scaling, 30.0},
      {8, "streaking vs classical law", streaking, 0.0},
      {9, "invariant suite", invariants, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0.0 && secs > c.time_limit_s) {
      o.pass = false;
      o.detail += fmt::format("; over the {:.0f} s limit", c.time_limit_s);
    }
    failures += !o.pass;
    fmt::print("{} criterion {}: {} -- {} [{:.2f} s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail, secs);
  }
  return failures == 0 ? 0 : 1;
}
