#include <doctest.h>

#include <cmath>
#include <random>

#include "panda/atomic/fano.hpp"
#include "panda/errors.hpp"
#include "panda/model.hpp"
#include "panda/retrieval.hpp"
#include "panda/units.hpp"

using namespace panda;
using namespace panda::model;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

pulse::SpectralPulse xuv(double gdd_as2 = 0.0, double tod_as3 = 0.0, std::size_t n = 4001) {
  const double c = units::eV_to_au(60.0), bw = units::eV_to_au(12.0);
  const auto g = pulse::FrequencyGrid::uniform(c - 4 * bw, c + 4 * bw, n);
  pulse::GaussianPulseSpec s;
  s.center = c;
  s.fwhm_bandwidth = bw;
  s.gdd = units::as2_to_au(gdd_as2);
  auto p = pulse::synthesize_gaussian(s, g);
  if (tod_as3 == 0.0) return p;
  const double tod = tod_as3 / std::pow(units::au_time_as, 3);
  std::vector<double> ph(p.phase().begin(), p.phase().end());
  for (std::size_t i = 0; i < ph.size(); ++i) ph[i] += tod / 6.0 * std::pow(g[i] - c, 3);
  return pulse::SpectralPulse(g, {p.magnitude().begin(), p.magnitude().end()}, ph);
}

std::vector<double> energies_eV(double lo, double hi, int n) {
  std::vector<double> e(n);
  for (int i = 0; i < n; ++i) e[i] = units::eV_to_au(lo + (hi - lo) * i / (n - 1));
  return e;
}

struct Setup {
  wavepacket::WavePacket w = wavepacket::hydrogenic_pair(2, 3, 1);
  std::vector<double> eps = energies_eV(48.0, 66.0, 37);
  PacketChannels ch = hydrogenic_channels(w, eps);
};

const Setup& setup() {
  static const Setup s;
  return s;
}

std::vector<BeatTerms> terms_for(const pulse::SpectralPulse& p, const PacketChannels& ch) {
  std::vector<BeatTerms> t;
  for (double e : setup().eps) t.push_back(beat_terms(setup().w, p, ch, e));
  return t;
}

}  // namespace

TEST_CASE("beat terms algebra") {
  BeatTerms t{1.0, 0.5, -0.8, 0.3};
  CHECK(t.contrast() == Approx(0.8 / 1.5));
  CHECK(t.probability(2.0, 0.1) == Approx(1.5 - 0.8 * std::cos(0.5)));
  CHECK(BeatTerms{}.contrast() == 0.0);
}

TEST_CASE("forward model invariants") {
  const auto& s = setup();
  const double dw = wavepacket::splitting(s.w);
  const auto p = xuv(4000.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> tau(-500.0, 500.0);
  for (double e : s.eps) {
    const auto t = beat_terms(s.w, p, s.ch, e);
    CHECK(std::abs(t.b) <= t.a1 + t.a2);
    CHECK(std::abs(t.b) <= 2.0 * std::sqrt(t.a1 * t.a2) * (1 + 1e-12));
    const double x = tau(rng);
    CHECK(t.probability(dw, x) >= 0.0);
    CHECK(t.probability(dw, x + 2 * pi / dw) == Approx(t.probability(dw, x)).epsilon(1e-10));
  }
}

TEST_CASE("delay zero: transform-limited pulse and real elements") {
  const auto& s = setup();
  const auto c = panda_delay(s.eps, terms_for(xuv(), s.ch), wavepacket::splitting(s.w));
  for (std::size_t i = 0; i < c.delay.size(); ++i) {
    CHECK(c.delay[i] == Approx(0.0).scale(1.0).epsilon(1e-9));
  }
}

TEST_CASE("a chirp is read as the group delay at the midpoint frequency") {
  const auto& s = setup();
  const double gdd = units::as2_to_au(5000.0), center = units::eV_to_au(60.0);
  const double ip = wavepacket::effective_binding(s.w);
  const auto c = panda_delay(s.eps, terms_for(xuv(5000.0), s.ch), wavepacket::splitting(s.w));
  for (std::size_t i = 0; i < c.delay.size(); ++i) {
    if (c.mask[i]) continue;
    CHECK(c.delay[i] == Approx(gdd * (s.eps[i] + ip - center)).epsilon(1e-3).scale(1.0));
  }
}

TEST_CASE("shearing error scales with the splitting squared") {
  // phi = TOD (w - c)^3 / 6: finite difference minus derivative = TOD dw^2 / 24
  const double tod = 2e6;
  const auto p = xuv(0.0, tod, 20001);
  const double center = units::eV_to_au(60.0);
  const double tod_au = tod / std::pow(units::au_time_as, 3);
  auto error_at = [&](int n2) {
    const auto w = wavepacket::hydrogenic_pair(2, n2, 1);
    const auto eps = energies_eV(55.0, 57.0, 3);
    const auto ch = hydrogenic_channels(w, eps);
    const auto t = beat_terms(w, p, ch, eps[1]);
    const double mid = eps[1] + wavepacket::effective_binding(w) - center;
    return t.theta0 / wavepacket::splitting(w) - 0.5 * tod_au * mid * mid;
  };
  const double dw3 = wavepacket::splitting(wavepacket::hydrogenic_pair(2, 3, 1));
  const double dw5 = wavepacket::splitting(wavepacket::hydrogenic_pair(2, 5, 1));
  CHECK(error_at(3) == Approx(tod_au * dw3 * dw3 / 24.0).epsilon(1e-3));
  CHECK(error_at(3) / error_at(5) == Approx(dw3 * dw3 / (dw5 * dw5)).epsilon(1e-3));
}

TEST_CASE("a common Fano factor drops out of the delay") {
  const auto& s = setup();
  const atomic::FanoParams fp{-1.7, units::eV_to_au(57.0), units::eV_to_au(0.8)};
  const PacketChannels dressed{s.ch.first.with_fano(fp), s.ch.second.with_fano(fp)};
  const auto p = xuv(3000.0);
  const auto a = panda_delay(s.eps, terms_for(p, s.ch), wavepacket::splitting(s.w));
  const auto b = panda_delay(s.eps, terms_for(p, dressed), wavepacket::splitting(s.w));
  double worst = 0.0;
  for (std::size_t i = 0; i < a.delay.size(); ++i) {
    if (!b.mask[i]) worst = std::max(worst, std::abs(a.delay[i] - b.delay[i]));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("Cooper-like sign changes") {
  const auto& s = setup();
  const double flip = units::eV_to_au(57.0);
  const double dw = wavepacket::splitting(s.w);
  const auto p = xuv(2000.0);
  const auto ref = panda_delay(s.eps, terms_for(p, s.ch), dw);
  SUBCASE("both states flip: nothing changes") {
    const PacketChannels both{s.ch.first.sign_flipped_above(flip), s.ch.second.sign_flipped_above(flip)};
    const auto c = panda_delay(s.eps, terms_for(p, both), dw);
    CHECK(c.branch == ref.branch);
    for (std::size_t i = 0; i < c.delay.size(); ++i) CHECK(c.delay[i] == Approx(ref.delay[i]).scale(1.0));
  }
  SUBCASE("one state flips: the branch toggles, the delay does not") {
    const PacketChannels one{s.ch.first.sign_flipped_above(flip), s.ch.second};
    const auto c = panda_delay(s.eps, terms_for(p, one), dw);
    for (std::size_t i = 0; i < c.delay.size(); ++i) {
      CHECK(c.branch[i] == (s.eps[i] >= flip ? 1 - ref.branch[i] : ref.branch[i]));
      CHECK(c.delay[i] == Approx(ref.delay[i]).scale(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("angle-resolved emission") {
  const auto& s = setup();
  const auto p = xuv(3000.0);
  const double dw = wavepacket::splitting(s.w);
  const double e = s.eps[18];
  SUBCASE("sphere integral equals the angle-integrated model") {
    const auto t = beat_terms(s.w, p, s.ch, e);
    for (double tau : {0.0, 13.0, 40.0}) {
      CHECK(angle_integrated_probability(s.w, p, s.ch, e, tau) == Approx(t.probability(dw, tau)).epsilon(1e-8));
    }
  }
  SUBCASE("partial waves") {
    const auto em = angular_emission(s.ch, e, 0.4);
    CHECK(em.L == std::vector<int>{0, 2});
    CHECK(std::abs(em.amplitude1() - (em.first[0] + em.first[1])) == Approx(0.0).scale(1.0));
  }
  SUBCASE("forward and backward emission agree by parity") {
    const auto f = angle_resolved_terms(s.w, p, s.ch, e, 0.3);
    const auto b = angle_resolved_terms(s.w, p, s.ch, e, pi - 0.3);
    CHECK(f.theta0 == Approx(b.theta0));
    CHECK(f.a1 == Approx(b.a1));
  }
  SUBCASE("zero-delay angle is a root of the folded difference") {
    const auto ref = beat_terms(s.w, p, s.ch, e);
    const auto root = zero_delay_angle(s.w, p, s.ch, e, 0.0, pi / 2);
    if (root) {
      double d = angle_resolved_terms(s.w, p, s.ch, e, *root).theta0 - ref.theta0;
      retrieval::fold_half_period(d);
      CHECK(d == Approx(0.0).scale(1.0).epsilon(1e-9));
    } else {
      // the folded difference keeps one sign over the interval
      double a = angle_resolved_terms(s.w, p, s.ch, e, 0.01).theta0 - ref.theta0;
      double b = angle_resolved_terms(s.w, p, s.ch, e, pi / 2).theta0 - ref.theta0;
      retrieval::fold_half_period(a);
      retrieval::fold_half_period(b);
      CHECK((a > 0) == (b > 0));
    }
  }
  SUBCASE("missing channels and mismatched tables") {
    const PacketChannels partial{atomic::ChannelTable::constant(1, 0, 2, 0.1), s.ch.second};
    CHECK_THROWS_AS(angular_emission(partial, e, 0.2), DomainError);
    const PacketChannels swapped{s.ch.second, s.ch.first};
    const auto w = wavepacket::WavePacket(wavepacket::BoundState{2, 0, 0, {}, -0.125, std::sqrt(0.5)},
                                          wavepacket::BoundState{3, 0, 0, {}, -1.0 / 18, std::sqrt(0.5)});
    CHECK_THROWS_AS(beat_terms(w, p, swapped, e), DomainError);
  }
}

TEST_CASE("spectrogram and fitted delay") {
  const auto& s = setup();
  const auto p = xuv(4000.0);
  const double dw = wavepacket::splitting(s.w);
  const auto delays = default_delays(s.w);
  CHECK(delays.size() == 24);
  CHECK(delays[8] == Approx(wavepacket::beat_period(s.w)));
  const auto sg = spectrogram(s.w, p, s.ch, s.eps, delays);
  CHECK(sg.values.size() == delays.size() * s.eps.size());
  CHECK(sg.at(3, 5) == Approx(beat_terms(s.w, p, s.ch, s.eps[5]).probability(dw, delays[3])));
  CHECK(sg.meta["detection"] == "angle_integrated");
  const auto direct = panda_delay(s.eps, terms_for(p, s.ch), dw);
  const auto fitted = panda_delay(sg);
  for (std::size_t i = 0; i < s.eps.size(); ++i) {
    CHECK(fitted.mask[i] == direct.mask[i]);
    if (!direct.mask[i]) CHECK(fitted.delay[i] == Approx(direct.delay[i]).scale(1.0).epsilon(1e-8));
  }
  SUBCASE("angle resolved") {
    const auto ar = spectrogram(s.w, p, s.ch, s.eps, delays, 0.5);
    CHECK(ar.theta.has_value());
    CHECK(ar.at(1, 1) == Approx(angle_resolved_terms(s.w, p, s.ch, s.eps[1], 0.5).probability(dw, delays[1])));
  }
  SUBCASE("noise is seeded") {
    auto a = sg, b = sg, c = sg;
    add_noise(a, 0.05, 11);
    add_noise(b, 0.05, 11);
    add_noise(c, 0.05, 12);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    for (double v : a.values) CHECK(v >= 0.0);
    CHECK_THROWS_AS(add_noise(a, -1.0, 1), ConfigurationError);
  }
}

TEST_CASE("delay sampling") {
  const double dw = 0.1, T = 2 * pi / dw;
  std::vector<double> six, five;
  for (int i = 0; i < 13; ++i) six.push_back(i * T / 6);
  for (int i = 0; i < 11; ++i) five.push_back(i * T / 5);
  CHECK_NOTHROW(check_delay_sampling(six, dw));
  CHECK_THROWS_AS(check_delay_sampling(five, dw), ConfigurationError);
  CHECK_THROWS_AS(check_delay_sampling(std::vector<double>{0.0, 1.0, 1.0, 2.0}, dw), ConfigurationError);
  CHECK_THROWS_AS(default_delays(setup().w, 0), ConfigurationError);
}
