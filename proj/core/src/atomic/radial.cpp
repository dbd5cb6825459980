#include "panda/atomic/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "panda/atomic/coulomb.hpp"
#include "panda/errors.hpp"

namespace panda::atomic {

namespace {

constexpr double kRescale = 1e150;

// f(r) in u'' = f u for energy E.
std::vector<double> numerov_f(const CentralPotential& pot, int l, double energy, const RadialGrid& grid) {
  std::vector<double> f(grid.size());
  const double cent = l * (l + 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.r(i);
    f[i] = 2.0 * (pot(r) - energy) + cent / (r * r);
  }
  return f;
}

// Frobenius start u ~ r^(l+1) (1 + c1 r + c2 r^2) for V = -(Z + a e^{-br})/r.
double series_start(const CentralPotential& pot, int l, double energy, double r) {
  const double z0 = pot.Z + pot.a;
  const double c1 = -z0 / (l + 1.0);
  const double c2 = (-2.0 * z0 * c1 + 2.0 * pot.a * pot.b - 2.0 * energy) / (4.0 * l + 6.0);
  return std::pow(r, l + 1) * (1.0 + r * (c1 + r * c2));
}

// Outward Numerov over [0, last], rescaling to stay finite (the solution is
// only meaningful up to a constant).
void numerov_outward(std::span<const double> f, double h, std::span<double> u, std::size_t last) {
  const double h12 = h * h / 12.0;
  for (std::size_t i = 1; i < last; ++i) {
    const double next = (2.0 * (1.0 + 5.0 * h12 * f[i]) * u[i] - (1.0 - h12 * f[i - 1]) * u[i - 1]) /
                        (1.0 - h12 * f[i + 1]);
    u[i + 1] = next;
    if (std::abs(next) > kRescale) {
      for (std::size_t j = 0; j <= i + 1; ++j) u[j] /= kRescale;
    }
  }
}

void numerov_inward(std::span<const double> f, double h, std::span<double> u, std::size_t first) {
  const double h12 = h * h / 12.0;
  const std::size_t n = u.size();
  for (std::size_t i = n - 2; i > first; --i) {
    const double prev = (2.0 * (1.0 + 5.0 * h12 * f[i]) * u[i] - (1.0 - h12 * f[i + 1]) * u[i + 1]) /
                        (1.0 - h12 * f[i - 1]);
    u[i - 1] = prev;
    if (std::abs(prev) > kRescale) {
      for (std::size_t j = i - 1; j < n; ++j) u[j] /= kRescale;
    }
  }
}

int outward_nodes(const CentralPotential& pot, int l, double energy, const RadialGrid& grid) {
  const auto f = numerov_f(pot, l, energy, grid);
  const double h12 = grid.step() * grid.step() / 12.0;
  double prev = series_start(pot, l, energy, grid.r(0));
  double cur = series_start(pot, l, energy, grid.r(1));
  int nodes = 0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double next = (2.0 * (1.0 + 5.0 * h12 * f[i]) * cur - (1.0 - h12 * f[i - 1]) * prev) /
                        (1.0 - h12 * f[i + 1]);
    if ((cur > 0.0 && next <= 0.0) || (cur < 0.0 && next >= 0.0)) ++nodes;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      prev /= kRescale;
      cur /= kRescale;
    }
  }
  return nodes;
}

void normalize(std::vector<double>& u, const RadialGrid& grid) {
  std::vector<double> sq(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) sq[i] = u[i] * u[i];
  const double norm = std::sqrt(grid.integrate(sq));
  for (double& x : u) x /= norm;
}

BoundOrbital hydrogenic(double Z, int n, int l, const RadialGrid& grid) {
  BoundOrbital orb{n, l, -Z * Z / (2.0 * n * n), std::vector<double>(grid.size())};
  const auto k = static_cast<unsigned>(n - l - 1);
  const auto alpha = static_cast<unsigned>(2 * l + 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = 2.0 * Z * grid.r(i) / n;
    orb.radial[i] = grid.r(i) * std::pow(x, l) * std::exp(-0.5 * x) * std::assoc_laguerre(k, alpha, x);
  }
  normalize(orb.radial, grid);
  return orb;
}

// (alpha, beta) with u = alpha F + beta G at two grid points.
struct CoulombFit {
  double alpha;
  double beta;
};

CoulombFit fit_coulomb(std::span<const double> u, const RadialGrid& grid, std::size_t ia, std::size_t ib,
                       int L, double eta, double k) {
  const auto fa = coulomb_fg(L, eta, k * grid.r(ia));
  const auto fb = coulomb_fg(L, eta, k * grid.r(ib));
  const double det = fa.F * fb.G - fa.G * fb.F;
  if (std::abs(det) < 1e-8) throw GridError("continuum matching points are degenerate");
  return {(u[ia] * fb.G - u[ib] * fa.G) / det, (fa.F * u[ib] - fb.F * u[ia]) / det};
}

}  // namespace

void CentralPotential::validate() const {
  if (!(Z > 0.0)) throw DomainError("CentralPotential: Z must be > 0");
  if (!(a >= 0.0)) throw DomainError("CentralPotential: a must be >= 0");
  if (!(b > 0.0)) throw DomainError("CentralPotential: b must be > 0");
}

double CentralPotential::operator()(double r) const { return -(Z + a * std::exp(-b * r)) / r; }

double CentralPotential::short_range(double r) const { return -a * std::exp(-b * r) / r; }

RadialGrid::RadialGrid(double step, double r_max) : h_(step) {
  if (!(step > 0.0) || !(r_max > 10.0 * step)) throw DomainError("RadialGrid: need step > 0, r_max > 10 step");
  const auto n = static_cast<std::size_t>(std::floor(r_max / step + 1e-9));
  r_.resize(n);
  for (std::size_t i = 0; i < n; ++i) r_[i] = step * static_cast<double>(i + 1);
}

RadialGrid RadialGrid::for_energy(double eps_max, double r_max, double h_max) {
  double h = h_max;
  if (eps_max > 0.0) {
    const double wavelength = 2.0 * std::numbers::pi / std::sqrt(2.0 * eps_max);
    h = std::min(h, wavelength / 20.0);
  }
  return RadialGrid(h, r_max);
}

double RadialGrid::integrate(std::span<const double> f) const {
  if (f.size() != r_.size()) throw DomainError("RadialGrid::integrate: size mismatch");
  double acc = 0.0;
  for (double x : f) acc += x;
  return h_ * (acc - 0.5 * f.back());
}

int count_nodes(std::span<const double> u) {
  double peak = 0.0;
  for (double x : u) peak = std::max(peak, std::abs(x));
  const double floor = 1e-10 * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double x : u) {
    if (std::abs(x) <= floor) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++nodes;
    last_sign = s;
  }
  return nodes;
}

BoundOrbital solve_bound(const CentralPotential& pot, int n, int l, const RadialGrid& grid) {
  pot.validate();
  if (l < 0 || n <= l) throw DomainError(fmt::format("solve_bound: need n > l >= 0 (n={}, l={})", n, l));
  if (pot.is_coulomb()) return hydrogenic(pot.Z, n, l, grid);

  // Z <= Z_eff(r) <= Z + a brackets the level between two hydrogenic values.
  const int target = n - l - 1;
  double lo = -1.05 * (pot.Z + pot.a) * (pot.Z + pot.a) / (2.0 * n * n);
  double hi = -0.95 * pot.Z * pot.Z / (2.0 * n * n);
  if (outward_nodes(pot, l, lo, grid) > target || outward_nodes(pot, l, hi, grid) <= target) {
    throw ConvergenceError(fmt::format("solve_bound: cannot bracket n={}, l={} level", n, l));
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::abs(lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (outward_nodes(pot, l, mid, grid) > target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double energy = 0.5 * (lo + hi);

  // Outward to the outer turning point, inward from r_max, matched there.
  const auto f = numerov_f(pot, l, energy, grid);
  std::size_t turning = grid.size() / 2;
  for (std::size_t i = grid.size() - 1; i > 0; --i) {
    if (f[i] < 0.0) {
      turning = std::min(i + 1, grid.size() - 3);
      break;
    }
  }
  std::vector<double> out(grid.size(), 0.0), in(grid.size(), 0.0);
  out[0] = series_start(pot, l, energy, grid.r(0));
  out[1] = series_start(pot, l, energy, grid.r(1));
  numerov_outward(f, grid.step(), out, turning);
  in[grid.size() - 1] = 0.0;
  in[grid.size() - 2] = 1e-200;
  numerov_inward(f, grid.step(), in, turning);
  if (in[turning] == 0.0 || out[turning] == 0.0) {
    throw ConvergenceError("solve_bound: matching point sits on a node");
  }
  const double scale = out[turning] / in[turning];
  BoundOrbital orb{n, l, energy, std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) orb.radial[i] = i <= turning ? out[i] : scale * in[i];
  normalize(orb.radial, grid);
  if (count_nodes(orb.radial) != target) {
    throw ConvergenceError(fmt::format("solve_bound: n={}, l={} has {} nodes, expected {}", n, l,
                                       count_nodes(orb.radial), target));
  }
  return orb;
}

ContinuumWave solve_continuum(const CentralPotential& pot, double epsilon, int L, const RadialGrid& grid) {
  pot.validate();
  if (!(epsilon > 0.0)) throw DomainError("solve_continuum: epsilon must be > 0");
  if (L < 0) throw DomainError("solve_continuum: L must be >= 0");
  const double k = std::sqrt(2.0 * epsilon);
  const double wavelength = 2.0 * std::numbers::pi / k;
  if (grid.step() > wavelength / 12.0) {
    throw GridError(fmt::format("radial step {} under-resolves wavelength {} at epsilon {}", grid.step(),
                                wavelength, epsilon));
  }
  if (pot.a * std::exp(-pot.b * grid.r_max()) > 1e-12 * pot.Z) {
    throw GridError("short-range potential has not decayed at r_max");
  }

  ContinuumWave wave;
  wave.epsilon = epsilon;
  wave.L = L;
  wave.radial.assign(grid.size(), 0.0);
  auto& u = wave.radial;
  const auto f = numerov_f(pot, L, epsilon, grid);
  u[0] = series_start(pot, L, epsilon, grid.r(0));
  u[1] = series_start(pot, L, epsilon, grid.r(1));
  numerov_outward(f, grid.step(), u, grid.size() - 1);

  // match a quarter wavelength apart at the end of the grid
  const auto quarter = std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(wavelength / (4.0 * grid.step()))));
  const std::size_t ia = grid.size() - 1;
  const std::size_t ib = ia - quarter;
  const double eta = -pot.Z / k;
  const auto fit = fit_coulomb(u, grid, ia, ib, L, eta, k);
  const double amplitude = std::hypot(fit.alpha, fit.beta);
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) throw GridError("continuum matching failed");

  const double target = std::sqrt(2.0 / (std::numbers::pi * k));
  for (double& x : u) x *= target / amplitude;

  wave.short_range_phase = std::atan2(fit.beta, fit.alpha);
  wave.coulomb_phase = coulomb_phase(pot.Z, k, L);
  wave.phase = wave.coulomb_phase + wave.short_range_phase;

  // independent refit further in to check the asymptotic amplitude
  const std::size_t ic = (3 * grid.size()) / 4;
  if (ic > quarter + 1 && grid.r(ic - quarter) * k > 2.0 * (L + 1)) {
    const auto check = fit_coulomb(u, grid, ic, ic - quarter, L, eta, k);
    wave.amplitude_residual = std::abs(std::hypot(check.alpha, check.beta) / target - 1.0);
  }
  return wave;
}

double radial_dipole(const BoundOrbital& b, const ContinuumWave& c, const RadialGrid& grid) {
  if (std::abs(c.L - b.l) != 1) {
    throw SelectionRuleError(fmt::format("dipole l={} -> L={} violates |L - l| = 1", b.l, c.L));
  }
  if (b.radial.size() != grid.size() || c.radial.size() != grid.size()) {
    throw DomainError("radial_dipole: orbitals are not on the given grid");
  }
  std::vector<double> integrand(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) integrand[i] = c.radial[i] * grid.r(i) * b.radial[i];
  return grid.integrate(integrand);
}

}  // namespace panda::atomic
