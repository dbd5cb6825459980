#include "panda/wavepacket.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/core.h>

#include "panda/errors.hpp"

namespace panda::wavepacket {

void BoundState::validate() const {
  if (n < 1) throw DomainError("BoundState: n must be >= 1");
  if (l < 0 || l >= n) throw DomainError("BoundState: need 0 <= l < n");
  if (std::abs(m) > l) throw DomainError("BoundState: need |m| <= l");
  if (two_j && (*two_j < 1 || std::abs(*two_j - 2 * l) != 1)) {
    throw DomainError("BoundState: j must be l +- 1/2");
  }
  if (!(energy < 0.0)) throw DomainError("BoundState: energy must be negative");
  if (!(amplitude > 0.0)) throw DomainError("BoundState: amplitude must be positive");
}

WavePacket::WavePacket(BoundState a, BoundState b, double lifetime_inverse) : gamma_(lifetime_inverse) {
  a.validate();
  b.validate();
  if (a.energy == b.energy) throw DomainError("WavePacket: degenerate energies");
  if ((a.l - b.l) % 2 != 0) throw DomainError("WavePacket: states must have the same parity");
  const double norm = a.amplitude * a.amplitude + b.amplitude * b.amplitude;
  if (std::abs(norm - 1.0) > 1e-12) {
    throw DomainError(fmt::format("WavePacket: c1^2 + c2^2 = {} (expected 1)", norm));
  }
  if (!(lifetime_inverse >= 0.0)) throw DomainError("WavePacket: lifetime_inverse must be >= 0");
  if (a.energy < b.energy) {
    s1_ = a;
    s2_ = b;
  } else {
    s1_ = b;
    s2_ = a;
  }
}

WavePacket WavePacket::normalized(BoundState a, BoundState b, double lifetime_inverse) {
  const double norm = std::hypot(a.amplitude, b.amplitude);
  if (!(norm > 0.0)) throw DomainError("WavePacket: zero amplitudes");
  a.amplitude /= norm;
  b.amplitude /= norm;
  return WavePacket(a, b, lifetime_inverse);
}

double splitting(const WavePacket& w) { return w.state2().energy - w.state1().energy; }

double effective_binding(const WavePacket& w) {
  return std::abs(w.state1().energy + w.state2().energy) / 2.0;
}

double beat_period(const WavePacket& w) { return 2.0 * std::numbers::pi / splitting(w); }

WavePacket hydrogenic_pair(int n1, int n2, int l, double Z) {
  auto level = [&](int n) {
    BoundState s;
    s.n = n;
    s.l = l;
    s.m = 0;
    s.energy = -Z * Z / (2.0 * n * n);
    s.amplitude = 1.0;
    return s;
  };
  return WavePacket::normalized(level(n1), level(n2));
}

CompatibilityReport validate_against_pulse(const WavePacket& w, const pulse::SpectralPulse& p,
                                           const Margins& margins) {
  CompatibilityReport r;
  const double omega_x = pulse::centroid_frequency(p);
  const double bandwidth = pulse::intensity_fwhm(p);
  const double ip = effective_binding(w);
  const double dw = splitting(w);

  r.checks[0] = {"photon_energy_over_binding", omega_x / ip, margins.photon_energy, false};
  r.checks[1] = {"bandwidth_over_splitting", bandwidth / dw, margins.bandwidth, false};

  const double transform_limited = 4.0 * std::numbers::ln2 / bandwidth;
  const double chirp = 2.0 * std::sqrt(2.0 * std::numbers::ln2) * pulse::group_delay_spread(p);
  const double duration = std::hypot(transform_limited, chirp);
  const double lifetime_ratio = w.lifetime_inverse() > 0.0
                                    ? 1.0 / (w.lifetime_inverse() * duration)
                                    : std::numeric_limits<double>::infinity();
  r.checks[2] = {"lifetime_over_duration", lifetime_ratio, margins.lifetime, false};

  for (auto& c : r.checks) c.pass = c.ratio >= c.required;
  return r;
}

}  // namespace panda::wavepacket
