#include "panda/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "panda/errors.hpp"

namespace panda::pulse {

namespace {

constexpr double kUniformTolerance = 1e-12;

std::vector<double> trapezoid_weights(std::span<const double> x) {
  std::vector<double> w(x.size(), 0.0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double h = 0.5 * (x[i + 1] - x[i]);
    w[i] += h;
    w[i + 1] += h;
  }
  return w;
}

}  // namespace

FrequencyGrid::FrequencyGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw DomainError("FrequencyGrid needs at least two points");
  if (points_.front() < 0.0) throw DomainError("FrequencyGrid holds the positive axis only");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i] > points_[i - 1])) {
      throw DomainError(fmt::format("FrequencyGrid not strictly increasing at index {}", i));
    }
  }
  const double step = (points_.back() - points_.front()) / static_cast<double>(points_.size() - 1);
  const double scale = std::max(std::abs(points_.front()), std::abs(points_.back()));
  uniform_ = std::all_of(points_.begin() + 1, points_.end(), [&, prev = points_.front()](double x) mutable {
    const bool ok = std::abs((x - prev) - step) <= kUniformTolerance * scale;
    prev = x;
    return ok;
  });
}

FrequencyGrid FrequencyGrid::uniform(double lo, double hi, std::size_t count) {
  if (count < 2 || !(hi > lo)) throw DomainError("uniform grid needs count >= 2 and hi > lo");
  std::vector<double> p(count);
  const double h = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) p[i] = lo + h * static_cast<double>(i);
  p.back() = hi;
  return FrequencyGrid(std::move(p));
}

std::size_t FrequencyGrid::interval(double omega) const {
  if (!contains(omega)) {
    throw DomainError(fmt::format("frequency {} outside grid [{}, {}]", omega, front(), back()));
  }
  auto it = std::upper_bound(points_.begin(), points_.end(), omega);
  std::size_t i = static_cast<std::size_t>(it - points_.begin());
  i = (i == 0) ? 0 : i - 1;
  return std::min(i, points_.size() - 2);
}

SpectralPulse::SpectralPulse(FrequencyGrid grid, std::vector<double> magnitude,
                             std::vector<double> phase, double cep)
    : grid_(std::move(grid)), magnitude_(std::move(magnitude)), phase_(std::move(phase)), cep_(cep) {
  if (magnitude_.size() != grid_.size() || phase_.size() != grid_.size()) {
    throw DomainError("SpectralPulse: magnitude/phase size does not match grid");
  }
  for (double m : magnitude_) {
    if (!(m >= 0.0)) throw DomainError("SpectralPulse: magnitude must be nonnegative");
  }
}

void GaussianPulseSpec::validate() const {
  if (!(fwhm_bandwidth > 0.0)) throw DomainError("Gaussian pulse: fwhm_bandwidth must be > 0");
  if (!(amplitude > 0.0)) throw DomainError("Gaussian pulse: amplitude must be > 0");
}

SpectralPulse synthesize_gaussian(const GaussianPulseSpec& spec, const FrequencyGrid& grid) {
  spec.validate();
  const double half_support = 3.0 * spec.fwhm_bandwidth;
  if (grid.front() > spec.center - half_support || grid.back() < spec.center + half_support) {
    throw DomainError(fmt::format("grid [{}, {}] does not cover pulse support {} +- {}", grid.front(),
                                  grid.back(), spec.center, half_support));
  }
  // |E|^2 ~ exp(-4 ln2 dw^2 / fwhm^2)
  const double k = 2.0 * std::numbers::ln2 / (spec.fwhm_bandwidth * spec.fwhm_bandwidth);
  std::vector<double> mag(grid.size()), ph(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double dw = grid[i] - spec.center;
    mag[i] = spec.amplitude * std::exp(-k * dw * dw);
    ph[i] = spec.cep + spec.delay * dw + 0.5 * spec.gdd * dw * dw;
  }
  return SpectralPulse(grid, std::move(mag), std::move(ph), spec.cep);
}

std::vector<double> derivative(std::span<const double> f, const FrequencyGrid& grid) {
  const std::size_t n = grid.size();
  if (n < 3) throw DomainError("derivative needs at least three grid points");
  if (f.size() != n) throw DomainError("derivative: size mismatch");
  const auto x = grid.points();
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = x[i] - x[i - 1];
    const double h2 = x[i + 1] - x[i];
    d[i] = -h2 / (h1 * (h1 + h2)) * f[i - 1] + (h2 - h1) / (h1 * h2) * f[i] +
           h1 / (h2 * (h1 + h2)) * f[i + 1];
  }
  {
    const double h1 = x[1] - x[0];
    const double h2 = x[2] - x[1];
    d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * f[0] + (h1 + h2) / (h1 * h2) * f[1] -
           h1 / (h2 * (h1 + h2)) * f[2];
  }
  {
    const double h1 = x[n - 2] - x[n - 3];
    const double h2 = x[n - 1] - x[n - 2];
    d[n - 1] = h2 / (h1 * (h1 + h2)) * f[n - 3] - (h1 + h2) / (h1 * h2) * f[n - 2] +
               (2.0 * h2 + h1) / (h2 * (h1 + h2)) * f[n - 1];
  }
  return d;
}

std::vector<double> group_delay(const SpectralPulse& p) { return derivative(p.phase(), p.grid()); }

std::vector<double> phase_from_group_delay(std::span<const double> gd, const FrequencyGrid& grid,
                                           double anchor, double phi0) {
  if (gd.size() != grid.size()) throw DomainError("phase_from_group_delay: size mismatch");
  if (!grid.contains(anchor)) {
    throw DomainError(fmt::format("anchor {} outside grid [{}, {}]", anchor, grid.front(), grid.back()));
  }
  const auto x = grid.points();
  std::vector<double> cumulative(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    cumulative[i] = cumulative[i - 1] + 0.5 * (x[i] - x[i - 1]) * (gd[i] + gd[i - 1]);
  }
  const std::size_t j = grid.interval(anchor);
  const double t = (anchor - x[j]) / (x[j + 1] - x[j]);
  const double gd_anchor = gd[j] + t * (gd[j + 1] - gd[j]);
  const double at_anchor = cumulative[j] + 0.5 * (anchor - x[j]) * (gd[j] + gd_anchor);
  std::vector<double> phase(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) phase[i] = phi0 + cumulative[i] - at_anchor;
  return phase;
}

std::complex<double> half_axis_integral(const SpectralPulse& p, double t) {
  const auto x = p.grid().points();
  const auto mag = p.magnitude();
  const auto ph = p.phase();
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double h = 0.5 * (x[i + 1] - x[i]);
    sum += h * std::polar(mag[i], ph[i] - x[i] * t);
    sum += h * std::polar(mag[i + 1], ph[i + 1] - x[i + 1] * t);
  }
  return sum;
}

TemporalField to_time_domain(const SpectralPulse& p, std::span<const double> times) {
  const auto x = p.grid().points();
  const auto mag = p.magnitude();
  const auto ph = p.phase();
  const auto w = trapezoid_weights(x);
  TemporalField out{std::vector<double>(times.begin(), times.end()), std::vector<double>(times.size())};
  for (std::size_t k = 0; k < times.size(); ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * mag[i] * std::cos(ph[i] - x[i] * times[k]);
    out.values[k] = acc / std::numbers::pi;
  }
  return out;
}

std::vector<double> uniform_times(double t0, double t1, std::size_t count) {
  if (count < 2 || !(t1 > t0)) throw DomainError("uniform_times needs count >= 2 and t1 > t0");
  std::vector<double> t(count);
  const double h = (t1 - t0) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) t[i] = t0 + h * static_cast<double>(i);
  return t;
}

SpectralPulse apply_delay(const SpectralPulse& p, double tau) {
  std::vector<double> ph(p.phase().begin(), p.phase().end());
  const auto x = p.grid().points();
  for (std::size_t i = 0; i < ph.size(); ++i) ph[i] += x[i] * tau;
  return SpectralPulse(p.grid(), std::vector<double>(p.magnitude().begin(), p.magnitude().end()),
                       std::move(ph), p.cep());
}

double sample_magnitude(const SpectralPulse& p, double omega) {
  const std::size_t j = p.grid().interval(omega);
  const double t = (omega - p.grid()[j]) / (p.grid()[j + 1] - p.grid()[j]);
  return p.magnitude()[j] + t * (p.magnitude()[j + 1] - p.magnitude()[j]);
}

double sample_phase(const SpectralPulse& p, double omega) {
  const std::size_t j = p.grid().interval(omega);
  const double t = (omega - p.grid()[j]) / (p.grid()[j + 1] - p.grid()[j]);
  return p.phase()[j] + t * (p.phase()[j + 1] - p.phase()[j]);
}

std::complex<double> sample(const SpectralPulse& p, double omega) {
  return std::polar(sample_magnitude(p, omega), sample_phase(p, omega));
}

double spectral_energy(const SpectralPulse& p) {
  const auto x = p.grid().points();
  const auto mag = p.magnitude();
  const auto w = trapezoid_weights(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * mag[i] * mag[i];
  return acc / std::numbers::pi;
}

double temporal_energy(const TemporalField& f) {
  const auto w = trapezoid_weights(f.times);
  double acc = 0.0;
  for (std::size_t i = 0; i < f.times.size(); ++i) acc += w[i] * f.values[i] * f.values[i];
  return acc;
}

double centroid_frequency(const SpectralPulse& p) {
  const auto x = p.grid().points();
  const auto mag = p.magnitude();
  const auto w = trapezoid_weights(x);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double I = w[i] * mag[i] * mag[i];
    num += I * x[i];
    den += I;
  }
  if (den <= 0.0) throw DomainError("pulse has zero spectral intensity");
  return num / den;
}

double intensity_fwhm(const SpectralPulse& p) {
  const auto x = p.grid().points();
  const auto mag = p.magnitude();
  const std::size_t n = x.size();
  std::size_t peak = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (mag[i] > mag[peak]) peak = i;
  }
  const double half = 0.5 * mag[peak] * mag[peak];
  if (half <= 0.0) throw DomainError("pulse has zero spectral intensity");
  auto intensity = [&](std::size_t i) { return mag[i] * mag[i]; };
  double left = x.front();
  for (std::size_t i = peak; i > 0; --i) {
    if (intensity(i - 1) < half) {
      const double t = (half - intensity(i - 1)) / (intensity(i) - intensity(i - 1));
      left = x[i - 1] + t * (x[i] - x[i - 1]);
      break;
    }
  }
  double right = x.back();
  for (std::size_t i = peak; i + 1 < n; ++i) {
    if (intensity(i + 1) < half) {
      const double t = (intensity(i) - half) / (intensity(i) - intensity(i + 1));
      right = x[i] + t * (x[i + 1] - x[i]);
      break;
    }
  }
  return right - left;
}

double group_delay_spread(const SpectralPulse& p) {
  const auto gd = group_delay(p);
  const auto x = p.grid().points();
  const auto mag = p.magnitude();
  const auto w = trapezoid_weights(x);
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double I = w[i] * mag[i] * mag[i];
    s0 += I;
    s1 += I * gd[i];
    s2 += I * gd[i] * gd[i];
  }
  if (s0 <= 0.0) return 0.0;
  const double mean = s1 / s0;
  return std::sqrt(std::max(0.0, s2 / s0 - mean * mean));
}

}  // namespace panda::pulse
