#pragma once

#include <array>
#include <optional>
#include <string>

#include "panda/pulse.hpp"

namespace panda::wavepacket {

struct BoundState {
  int n = 1;
  int l = 0;
  int m = 0;
  std::optional<int> two_j;  // 2j for fine-structure levels
  double energy = -0.5;      // a.u., < 0
  double amplitude = 1.0;    // real, > 0

  void validate() const;
};

// Two-level bound "clock". state1() is always the more deeply bound level, so
// that splitting() = w_f1 - w_f2 > 0 for a common final energy.
class WavePacket {
 public:
  // Amplitudes must already satisfy c1^2 + c2^2 = 1 (tolerance 1e-12).
  WavePacket(BoundState a, BoundState b, double lifetime_inverse = 0.0);

  // Rescales the two amplitudes onto the unit circle first.
  static WavePacket normalized(BoundState a, BoundState b, double lifetime_inverse = 0.0);

  const BoundState& state1() const { return s1_; }
  const BoundState& state2() const { return s2_; }
  double lifetime_inverse() const { return gamma_; }

 private:
  BoundState s1_;
  BoundState s2_;
  double gamma_ = 0.0;
};

double splitting(const WavePacket& w);          // Delta omega > 0
double effective_binding(const WavePacket& w);  // |e1 + e2| / 2
double beat_period(const WavePacket& w);        // 2 pi / Delta omega

// Hydrogenic np levels with equal amplitudes.
WavePacket hydrogenic_pair(int n1, int n2, int l, double Z = 1.0);

struct Margins {
  double photon_energy = 5.0;  // omega_X >> Ip
  double bandwidth = 5.0;      // Delta omega_X >> Delta omega
  double lifetime = 5.0;       // 1/Gamma >> pulse duration
};

struct CompatibilityCheck {
  std::string name;
  double ratio = 0.0;
  double required = 0.0;
  bool pass = false;
};

struct CompatibilityReport {
  std::array<CompatibilityCheck, 3> checks;
  bool all_pass() const { return checks[0].pass && checks[1].pass && checks[2].pass; }
};

// Never throws for a well-formed pulse. The pulse duration for the lifetime
// condition is the transform-limited Gaussian FWHM 4 ln2 / Delta omega_X
// combined in quadrature with 2.355 times the intensity-weighted group-delay
// spread.
CompatibilityReport validate_against_pulse(const WavePacket& w, const pulse::SpectralPulse& p,
                                           const Margins& margins = {});

}  // namespace panda::wavepacket
