#include "panda/retrieval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "panda/errors.hpp"
#include "panda/parallel.hpp"

namespace panda::retrieval {

namespace {
constexpr double pi = std::numbers::pi;
}

BeatFit fit_column(std::span<const double> delays, std::span<const double> values, double dw) {
  const std::size_t n = delays.size();
  if (values.size() != n) throw DomainError("fit_column: size mismatch");
  if (n < 3) throw ConfigurationError("fit_column: need at least 3 samples");

  // modified Gram-Schmidt QR of [1, cos, sin]
  std::array<std::vector<double>, 3> q;
  for (auto& c : q) c.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    q[0][i] = 1.0;
    q[1][i] = std::cos(dw * delays[i]);
    q[2][i] = std::sin(dw * delays[i]);
  }
  std::array<std::array<double, 3>, 3> r{};
  for (int j = 0; j < 3; ++j) {
    double norm0 = 0.0;
    for (double v : q[j]) norm0 += v * v;
    norm0 = std::sqrt(norm0);
    for (int k = 0; k < j; ++k) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += q[k][i] * q[j][i];
      r[k][j] = d;
      for (std::size_t i = 0; i < n; ++i) q[j][i] -= d * q[k][i];
    }
    double norm = 0.0;
    for (double v : q[j]) norm += v * v;
    norm = std::sqrt(norm);
    if (!(norm > 1e-10 * norm0)) {
      throw ConfigurationError("beat fit: delay grid is degenerate (rank-deficient design)");
    }
    r[j][j] = norm;
    for (double& v : q[j]) v /= norm;
  }
  std::array<double, 3> x{};
  for (int j = 0; j < 3; ++j) {
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) d += q[j][i] * values[i];
    x[j] = d;
  }
  for (int j = 2; j >= 0; --j) {
    for (int k = j + 1; k < 3; ++k) x[j] -= r[j][k] * x[k];
    x[j] /= r[j][j];
  }

  BeatFit f;
  f.offset = x[0];
  f.amplitude = std::hypot(x[1], x[2]);
  f.phase = std::atan2(-x[2], x[1]);
  f.contrast = f.offset > 0.0 ? f.amplitude / f.offset : 0.0;
  return f;
}

std::vector<BeatFit> extract_beat_phase(const model::Spectrogram& s, double dw) {
  if (!(dw > 0.0)) throw ConfigurationError("extract_beat_phase: splitting must be positive");
  model::check_delay_sampling(s.delays, dw);
  const double span = s.delays.back() - s.delays.front();
  const double periods = span * dw / (2.0 * pi);
  if (periods < 2.0 * (1.0 - 1e-9)) {
    throw ConfigurationError(fmt::format("delay grid spans {:.3g} beat periods, at least 2 are required", periods));
  }
  std::vector<BeatFit> out(s.energies.size());
  parallel_for(out.size(), [&](std::size_t ie) { out[ie] = fit_column(s.delays, s.column(ie), dw); });
  return out;
}

int fold_half_period(double& phase) {
  phase = std::remainder(phase, 2.0 * pi);  // [-pi, pi]
  if (phase > pi / 2) {
    phase -= pi;
    return 1;
  }
  if (phase <= -pi / 2) {
    phase += pi;
    return 1;
  }
  return 0;
}

Unwrapped unwrap(std::span<const double> phases, const std::vector<bool>& mask, double period) {
  const std::size_t n = phases.size();
  if (!mask.empty() && mask.size() != n) throw DomainError("unwrap: mask size mismatch");
  auto masked = [&](std::size_t i) { return !mask.empty() && mask[i]; };
  const bool half = std::abs(period - pi) < 1e-12;

  Unwrapped u;
  u.phase.assign(phases.begin(), phases.end());
  u.branch.assign(n, 0);
  u.bridged.assign(n, false);

  long k = 0;
  std::ptrdiff_t prev = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (masked(i)) continue;
    if (prev >= 0) {
      const double d = phases[i] + static_cast<double>(k) * period - u.phase[static_cast<std::size_t>(prev)];
      k -= std::lround(d / period);
    }
    u.phase[i] = phases[i] + static_cast<double>(k) * period;
    if (half) u.branch[i] = static_cast<int>(std::abs(k) % 2);
    prev = static_cast<std::ptrdiff_t>(i);
  }

  // bridge masked runs
  std::ptrdiff_t left = -1;
  for (std::size_t i = 0; i < n;) {
    if (!masked(i)) {
      left = static_cast<std::ptrdiff_t>(i++);
      continue;
    }
    std::size_t j = i;
    while (j < n && masked(j)) ++j;
    for (std::size_t m = i; m < j; ++m) {
      u.bridged[m] = true;
      if (left >= 0 && j < n) {
        const auto a = static_cast<std::size_t>(left);
        const double t = static_cast<double>(m - a) / static_cast<double>(j - a);
        u.phase[m] = u.phase[a] + t * (u.phase[j] - u.phase[a]);
        u.branch[m] = u.branch[a];
      } else if (left >= 0) {
        u.phase[m] = u.phase[static_cast<std::size_t>(left)];
        u.branch[m] = u.branch[static_cast<std::size_t>(left)];
      } else if (j < n) {
        u.phase[m] = u.phase[j];
        u.branch[m] = u.branch[j];
      }
    }
    i = j;
  }
  return u;
}

std::vector<double> to_group_delay(std::span<const double> phases, double dw, double zero_ref) {
  if (!(dw > 0.0)) throw DomainError("to_group_delay: splitting must be positive");
  std::vector<double> gd(phases.size());
  for (std::size_t i = 0; i < gd.size(); ++i) gd[i] = phases[i] / dw - zero_ref;
  return gd;
}

std::vector<double> reconstruct_phase(std::span<const double> gd, const pulse::FrequencyGrid& grid, double anchor,
                                      double phi0) {
  return pulse::phase_from_group_delay(gd, grid, anchor, phi0);
}

RetrievalResult retrieve(const model::Spectrogram& s, const RetrievalOptions& opt) {
  const double dw = s.splitting;
  const auto fits = extract_beat_phase(s, dw);
  const std::size_t n = fits.size();

  RetrievalResult r;
  r.energies = s.energies;
  r.splitting = dw;
  r.effective_binding = s.effective_binding;
  r.zero_ref = opt.zero_ref;
  r.mask.resize(n);
  r.contrast.resize(n);
  r.offset.resize(n);
  r.omega.resize(n);

  std::vector<double> phase(n);
  std::vector<int> fold(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    phase[i] = fits[i].phase;
    if (opt.fold_branches) fold[i] = fold_half_period(phase[i]);
    r.contrast[i] = fits[i].contrast;
    r.offset[i] = fits[i].offset;
    r.mask[i] = !(fits[i].contrast >= opt.threshold);
    r.omega[i] = s.energies[i] + s.effective_binding;
  }
  const auto u = unwrap(phase, r.mask, opt.fold_branches ? pi : 2.0 * pi);
  r.beat_phase = u.phase;
  r.bridged = u.bridged;
  r.branch.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.branch[i] = (fold[i] + u.branch[i]) % 2;
  r.group_delay = to_group_delay(r.beat_phase, dw, opt.zero_ref);

  if (opt.anchor) {
    r.anchor = *opt.anchor;
  } else {
    double wsum = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (r.mask[i] || r.offset[i] <= 0.0) continue;
      wsum += r.offset[i];
      acc += r.offset[i] * r.omega[i];
    }
    r.anchor = wsum > 0.0 ? acc / wsum : r.omega[n / 2];
  }
  if (n >= 2) {
    const pulse::FrequencyGrid grid(r.omega);
    r.spectral_phase = reconstruct_phase(r.group_delay, grid, r.anchor, opt.phi0);
  } else {
    r.spectral_phase.assign(n, opt.phi0);
  }
  return r;
}

Comparison compare(const pulse::SpectralPulse& truth, const RetrievalResult& r) {
  const auto gd_true = pulse::group_delay(truth);
  const auto& grid = truth.grid();
  std::vector<double> diff;
  std::vector<double> ref;
  for (std::size_t i = 0; i < r.omega.size(); ++i) {
    if (r.mask[i] || r.bridged[i] || !grid.contains(r.omega[i])) continue;
    const std::size_t j = grid.interval(r.omega[i]);
    const double t = (r.omega[i] - grid[j]) / (grid[j + 1] - grid[j]);
    const double g = gd_true[j] + t * (gd_true[j + 1] - gd_true[j]);
    ref.push_back(g);
    diff.push_back(r.group_delay[i] - g);
  }
  if (diff.empty()) throw DomainError("compare: retrieval and truth do not overlap");

  Comparison c;
  c.count = diff.size();
  for (double d : diff) c.offset += d;
  c.offset /= static_cast<double>(c.count);
  for (double d : diff) {
    c.rms += (d - c.offset) * (d - c.offset);
    c.max_abs = std::max(c.max_abs, std::abs(d - c.offset));
  }
  c.rms = std::sqrt(c.rms / static_cast<double>(c.count));
  const auto [lo, hi] = std::minmax_element(ref.begin(), ref.end());
  c.truth_span = *hi - *lo;
  return c;
}

}  // namespace panda::retrieval
