#include <doctest.h>

#include <cmath>
#include <numbers>

#include "panda/errors.hpp"
#include "panda/pulse.hpp"
#include "panda/units.hpp"

using namespace panda;
using namespace panda::pulse;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

GaussianPulseSpec spec100() {
  GaussianPulseSpec s;
  s.center = units::eV_to_au(100.0);
  s.fwhm_bandwidth = units::eV_to_au(5.0);
  return s;
}

FrequencyGrid grid100(std::size_t n = 1201) {
  return FrequencyGrid::uniform(units::eV_to_au(75.0), units::eV_to_au(125.0), n);
}

// half-maximum width of a sampled curve, linear interpolation at the crossings
double fwhm_of(const std::vector<double>& x, const std::vector<double>& y) {
  std::size_t imax = 0;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i] > y[imax]) imax = i;
  const double half = 0.5 * y[imax];
  std::size_t a = imax, b = imax;
  while (a > 0 && y[a] > half) --a;
  while (b + 1 < y.size() && y[b] > half) ++b;
  const double xa = x[a] + (half - y[a]) / (y[a + 1] - y[a]) * (x[a + 1] - x[a]);
  const double xb = x[b - 1] + (half - y[b - 1]) / (y[b] - y[b - 1]) * (x[b] - x[b - 1]);
  return xb - xa;
}

}  // namespace

TEST_CASE("frequency grid validation") {
  CHECK_THROWS_AS(FrequencyGrid({1.0}), DomainError);
  CHECK_THROWS_AS(FrequencyGrid({1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(FrequencyGrid({-1.0, 1.0}), DomainError);
  CHECK(FrequencyGrid::uniform(1.0, 2.0, 11).is_uniform());
  CHECK_FALSE(FrequencyGrid({1.0, 1.1, 1.3}).is_uniform());
  const auto g = FrequencyGrid::uniform(1.0, 2.0, 11);
  CHECK(g.interval(1.55) == 5);
  CHECK_THROWS_AS(g.interval(2.5), DomainError);
}

TEST_CASE("synthesize_gaussian") {
  SUBCASE("transform limited: phase is the cep") {
    auto s = spec100();
    s.cep = 0.7;
    const auto p = synthesize_gaussian(s, grid100());
    for (double ph : p.phase()) CHECK(ph == Approx(0.7).epsilon(1e-15));
  }
  SUBCASE("gdd gives a linear group delay") {
    auto s = spec100();
    s.gdd = units::as2_to_au(5000.0);
    const auto p = synthesize_gaussian(s, grid100());
    const auto gd = group_delay(p);
    for (std::size_t i = 0; i < gd.size(); ++i) {
      CHECK(gd[i] == Approx(s.gdd * (p.grid()[i] - s.center)).epsilon(1e-9).scale(1.0));
    }
  }
  SUBCASE("delay adds a linear term") {
    auto a = spec100();
    auto b = spec100();
    b.delay = 3.0;
    const auto pa = synthesize_gaussian(a, grid100());
    const auto pb = synthesize_gaussian(b, grid100());
    for (std::size_t i = 0; i < pa.grid().size(); ++i) {
      CHECK(pb.phase()[i] - pa.phase()[i] == Approx(3.0 * (pa.grid()[i] - a.center)).epsilon(1e-12).scale(1.0));
    }
  }
  SUBCASE("grid must cover +-3 FWHM") {
    CHECK_THROWS_AS(synthesize_gaussian(spec100(), FrequencyGrid::uniform(3.5, 3.8, 100)), DomainError);
  }
  SUBCASE("intensity FWHM and centroid") {
    const auto p = synthesize_gaussian(spec100(), grid100());
    CHECK(intensity_fwhm(p) == Approx(units::eV_to_au(5.0)).epsilon(1e-5));
    CHECK(centroid_frequency(p) == Approx(units::eV_to_au(100.0)).epsilon(1e-10));
  }
  SUBCASE("spec validation") {
    auto s = spec100();
    s.fwhm_bandwidth = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = spec100();
    s.amplitude = -1.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
  }
}

TEST_CASE("group_delay") {
  const auto g = FrequencyGrid::uniform(1.0, 3.0, 201);
  auto make = [&](auto f) {
    std::vector<double> ph(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) ph[i] = f(g[i]);
    return SpectralPulse(g, std::vector<double>(g.size(), 1.0), ph);
  };
  SUBCASE("constant phase") {
    for (double v : group_delay(make([](double) { return 1.3; }))) CHECK(v == Approx(0.0).scale(1.0));
  }
  SUBCASE("linear phase") {
    for (double v : group_delay(make([](double w) { return 25.0 * w; }))) CHECK(v == Approx(25.0).epsilon(1e-12));
  }
  SUBCASE("quadratic phase is exact for the 3-point stencils") {
    const auto gd = group_delay(make([](double w) { return 0.5 * 40.0 * (w - 2.0) * (w - 2.0); }));
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(gd[i] == Approx(40.0 * (g[i] - 2.0)).scale(1.0).epsilon(1e-9));
  }
  SUBCASE("cubic phase converges at second order, edges included") {
    auto err = [&](std::size_t n) {
      const auto gg = FrequencyGrid::uniform(1.0, 3.0, n);
      std::vector<double> ph(n);
      for (std::size_t i = 0; i < n; ++i) ph[i] = std::pow(gg[i] - 2.0, 3);
      const auto gd = derivative(ph, gg);
      double e = 0.0;
      for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(gd[i] - 3.0 * std::pow(gg[i] - 2.0, 2)));
      return e;
    };
    CHECK(err(101) / err(201) == Approx(4.0).epsilon(0.05));
  }
  SUBCASE("non-uniform grid") {
    std::vector<double> pts;
    for (int i = 0; i <= 100; ++i) pts.push_back(1.0 + 2.0 * std::pow(i / 100.0, 1.5));
    const FrequencyGrid ng(pts);
    std::vector<double> ph(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) ph[i] = 3.0 * pts[i] * pts[i];
    const auto gd = derivative(ph, ng);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(gd[i] == Approx(6.0 * pts[i]).epsilon(1e-9));
  }
  SUBCASE("needs three points") {
    const SpectralPulse p(FrequencyGrid({1.0, 2.0}), {1.0, 1.0}, {0.0, 0.0});
    CHECK_THROWS_AS(group_delay(p), DomainError);
  }
}

TEST_CASE("phase_from_group_delay") {
  const auto g = FrequencyGrid::uniform(1.0, 3.0, 401);
  SUBCASE("zero") {
    const auto ph = phase_from_group_delay(std::vector<double>(g.size(), 0.0), g, 2.0, 0.0);
    for (double v : ph) CHECK(v == 0.0);
  }
  SUBCASE("constant delay gives a linear phase through the anchor") {
    const auto ph = phase_from_group_delay(std::vector<double>(g.size(), 7.0), g, 2.1234, 0.5);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(ph[i] == Approx(0.5 + 7.0 * (g[i] - 2.1234)).epsilon(1e-12));
    CHECK(sample_phase(SpectralPulse(g, std::vector<double>(g.size(), 1.0), ph), 2.1234) == Approx(0.5));
  }
  SUBCASE("round trip through group_delay, polynomials to degree 3") {
    for (int deg = 0; deg <= 3; ++deg) {
      std::vector<double> gd(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) gd[i] = std::pow(g[i] - 1.7, deg) + 0.3;
      const auto ph = phase_from_group_delay(gd, g, 2.0, 0.0);
      const auto back = derivative(ph, g);
      double e = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) e = std::max(e, std::abs(back[i] - gd[i]));
      CHECK(e < 5e-4);
    }
  }
  SUBCASE("anchor outside the grid") {
    CHECK_THROWS_AS(phase_from_group_delay(std::vector<double>(g.size(), 0.0), g, 5.0, 0.0), DomainError);
  }
}

TEST_CASE("time domain") {
  const auto p = synthesize_gaussian(spec100(), grid100());
  const double tl = 4.0 * std::log(2.0) / units::eV_to_au(5.0);

  SUBCASE("Parseval") {
    const auto f = to_time_domain(p, uniform_times(-12.0 * tl, 12.0 * tl, 6001));
    CHECK(temporal_energy(f) == Approx(spectral_energy(p)).epsilon(1e-6));
  }
  SUBCASE("transform-limited duration") {
    const auto times = uniform_times(-3.0 * tl, 3.0 * tl, 1201);
    std::vector<double> env(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) env[i] = std::norm(half_axis_integral(p, times[i]));
    CHECK(fwhm_of(times, env) == Approx(tl).epsilon(1e-4));
  }
  SUBCASE("Hermitian completion is real") {
    // the negative axis contributes the conjugate of the stored half
    const auto i1 = half_axis_integral(p, 0.37);
    const std::complex<double> full = i1 + std::conj(i1);
    CHECK(std::abs(full.imag()) < 1e-12 * std::abs(i1));
    CHECK(to_time_domain(p, std::vector<double>{0.37}).values[0] == Approx(full.real() / (2.0 * pi)).epsilon(1e-14));
  }
  SUBCASE("delay moves the envelope") {
    const double tau = 2.5 * tl;
    const auto q = apply_delay(p, tau);
    const auto times = uniform_times(-6.0 * tl, 6.0 * tl, 4801);
    auto peak = [&](const SpectralPulse& s) {
      double best = 0.0, at = 0.0;
      for (double t : times) {
        const double v = std::norm(half_axis_integral(s, t));
        if (v > best) {
          best = v;
          at = t;
        }
      }
      return at;
    };
    CHECK(peak(q) - peak(p) == Approx(tau).epsilon(2e-3));
  }
  SUBCASE("narrow line gives a cosine") {
    const double w0 = 2.0;
    const auto g = FrequencyGrid::uniform(w0 - 1e-4, w0 + 1e-4, 41);
    std::vector<double> mag(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) mag[i] = std::exp(-std::pow((g[i] - w0) / 2e-5, 2));
    const SpectralPulse line(g, mag, std::vector<double>(g.size(), 0.0));
    const auto f = to_time_domain(line, uniform_times(0.0, 10.0, 101));
    for (std::size_t i = 0; i < f.times.size(); ++i) {
      CHECK(f.values[i] / f.values[0] == Approx(std::cos(w0 * f.times[i])).scale(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("apply_delay and sample") {
  auto s = spec100();
  s.gdd = units::as2_to_au(3000.0);
  const auto p = synthesize_gaussian(s, grid100());
  SUBCASE("zero delay is the identity") {
    const auto q = apply_delay(p, 0.0);
    for (std::size_t i = 0; i < p.grid().size(); ++i) CHECK(q.phase()[i] == p.phase()[i]);
  }
  SUBCASE("group delay shifts pointwise, magnitude unchanged") {
    const auto q = apply_delay(p, 4.2);
    const auto a = group_delay(p);
    const auto b = group_delay(q);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] - a[i] == Approx(4.2).epsilon(1e-9));
    for (double w : {3.5, 3.6, 3.7, 3.8}) CHECK(std::abs(sample(q, w)) == Approx(std::abs(sample(p, w))));
  }
  SUBCASE("grid points are exact") {
    for (std::size_t i = 0; i < p.grid().size(); i += 97) {
      CHECK(sample_magnitude(p, p.grid()[i]) == p.magnitude()[i]);
      CHECK(sample_phase(p, p.grid()[i]) == p.phase()[i]);
    }
  }
  SUBCASE("linear phase interpolates exactly") {
    const auto g = FrequencyGrid::uniform(1.0, 2.0, 11);
    std::vector<double> ph(11);
    for (std::size_t i = 0; i < 11; ++i) ph[i] = 5.0 * g[i];
    const SpectralPulse lin(g, std::vector<double>(11, 2.0), ph);
    CHECK(sample_phase(lin, 1.15) == Approx(5.75).epsilon(1e-14));
    CHECK(std::arg(sample(lin, 1.15)) == Approx(std::remainder(5.75, 2 * pi)).epsilon(1e-13));
  }
  SUBCASE("off grid matches a refined grid") {
    const auto fine = synthesize_gaussian(spec100(), grid100(48001));
    const auto coarse = synthesize_gaussian(spec100(), grid100(2001));
    for (double w_eV : {97.123, 100.01, 102.77}) {
      const double w = units::eV_to_au(w_eV);
      CHECK(std::abs(sample(coarse, w)) == Approx(std::abs(sample(fine, w))).epsilon(1e-4));
    }
  }
  SUBCASE("out of range") { CHECK_THROWS_AS(sample(p, 100.0), DomainError); }
}
