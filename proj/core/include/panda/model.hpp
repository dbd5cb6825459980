#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "panda/atomic/channels.hpp"
#include "panda/pulse.hpp"
#include "panda/wavepacket.hpp"

// Forward PANDA model. Conventions shared by everything below:
//   w_fj = eps - e_j (photon frequency reaching eps from state j), state 1 is
//   the lower level so dw = w_f1 - w_f2 > 0, and
//   P(eps, tau) = a1 + a2 + b cos(dw tau + theta0).
// The crest of the fringe therefore sits at tau = -theta0 / dw, and
// theta0 / dw is the reported PANDA delay. A transform-limited pulse with real
// matrix elements gives theta0 = 0 exactly, which is the delay zero.
namespace panda::model {

struct BeatTerms {
  double a1 = 0.0;
  double a2 = 0.0;
  double b = 0.0;       // signed; a pi in the cross-term phase is folded here
  double theta0 = 0.0;  // phi_X(w_f1) - phi_X(w_f2) + arg of the channel product

  double probability(double dw, double tau) const;
  double contrast() const;  // |b| / (a1 + a2), 0 when both vanish
};

// Channel tables matching state1() and state2() of the wave packet.
struct PacketChannels {
  atomic::ChannelTable first;
  atomic::ChannelTable second;
};

// Angle integrated: final (L, m) channels summed incoherently.
BeatTerms beat_terms(const wavepacket::WavePacket& w, const pulse::SpectralPulse& p,
                     const PacketChannels& ch, double epsilon);

// Partial-wave sum at polar angle theta (azimuth 0), per unit solid angle:
//   a_j(theta) = sum_L (-i)^L exp(i eta_L) Y_Lm(theta) <eps L m|z|j>
// Throws DomainError unless both tables hold every dipole-allowed L.
struct AngularEmission {
  double theta = 0.0;
  std::vector<int> L;
  std::vector<std::complex<double>> first;   // per L, state 1
  std::vector<std::complex<double>> second;  // per L, state 2
  std::complex<double> amplitude1() const;
  std::complex<double> amplitude2() const;
};

AngularEmission angular_emission(const PacketChannels& ch, double epsilon, double theta);

BeatTerms angle_resolved_terms(const wavepacket::WavePacket& w, const pulse::SpectralPulse& p,
                               const PacketChannels& ch, double epsilon, double theta);

// Polar angle in [lo, hi] where the angle-resolved PANDA delay crosses the
// angle-integrated one (TOMS 748 on the folded phase difference); nullopt
// without a sign change.
std::optional<double> zero_delay_angle(const wavepacket::WavePacket& w, const pulse::SpectralPulse& p,
                                       const PacketChannels& ch, double epsilon, double lo, double hi);

// Integral of the angle-resolved P over the sphere, Gauss-Legendre in
// cos(theta) with 64 nodes (the azimuth is trivial for fixed m).
double angle_integrated_probability(const wavepacket::WavePacket& w, const pulse::SpectralPulse& p,
                                    const PacketChannels& ch, double epsilon, double tau);

struct Spectrogram {
  std::vector<double> energies;  // eps, a.u.
  std::vector<double> delays;    // tau, a.u.
  std::vector<double> values;    // row-major, values[i_delay * energies.size() + i_energy]
  double splitting = 0.0;
  double effective_binding = 0.0;
  std::optional<double> theta;   // polar angle for angle-resolved maps
  std::string kind = "panda";
  nlohmann::json meta = nlohmann::json::object();

  double at(std::size_t i_delay, std::size_t i_energy) const {
    return values[i_delay * energies.size() + i_energy];
  }
  std::vector<double> column(std::size_t i_energy) const;
};

// per_period samples per beat over `periods` beats, starting at t0.
std::vector<double> default_delays(const wavepacket::WavePacket& w, int per_period = 8, int periods = 3,
                                   double t0 = 0.0);

// Throws ConfigurationError for fewer than 6 delay samples per beat period
// (largest step) or a non-increasing delay grid.
void check_delay_sampling(std::span<const double> delays, double dw);

// theta = nullopt: angle-integrated spectrogram; otherwise P per unit solid
// angle at that polar angle.
Spectrogram spectrogram(const wavepacket::WavePacket& w, const pulse::SpectralPulse& p, const PacketChannels& ch,
                        std::span<const double> energies, std::span<const double> delays,
                        std::optional<double> theta = std::nullopt);

// Additive Gaussian noise of width sigma * max(P), clamped at 0.
void add_noise(Spectrogram& s, double sigma, std::uint64_t seed);

// Per-energy delay curve.
struct DelayCurve {
  std::vector<double> energies;
  std::vector<double> delay;     // a.u., theta / dw after branch folding
  std::vector<double> phase;     // theta in (-pi/2, pi/2] before unwrapping
  std::vector<int> branch;       // 1 where the cross term is negative (pi folded)
  std::vector<bool> mask;        // true = contrast below threshold
  std::vector<double> contrast;
  std::string zero_reference = "transform-limited pulse at zero delay with real matrix elements gives 0";
};

inline constexpr double contrast_threshold = 0.02;

// Fits every column of the spectrogram (see retrieval::extract_beat_phase).
DelayCurve panda_delay(const Spectrogram& s, double threshold = contrast_threshold);

// Same curve straight from beat terms, no fitting.
DelayCurve panda_delay(std::span<const double> energies, std::span<const BeatTerms> terms, double dw,
                       double threshold = contrast_threshold);

// Hydrogenic channel tables for a same-l pair (Coulomb potential, m of the
// states) on the given electron energies.
PacketChannels hydrogenic_channels(const wavepacket::WavePacket& w, std::span<const double> energies,
                                   double Z = 1.0);

nlohmann::json describe(const wavepacket::WavePacket& w);
nlohmann::json describe(const pulse::SpectralPulse& p);

}  // namespace panda::model
