#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "panda/model.hpp"
#include "panda/pulse.hpp"

// SFA laser-assisted photoionization (velocity gauge, weak XUV):
//   c_k(tau) = -i M(k) Integral dt A_X(t - tau) exp(i S(t; k)),
//   S(t; k) = Integral^t [(k + A_L(t'))^2 / 2 + Ip] dt',
// so the classical final momentum is k = p0 - A_L(t0).
namespace panda::streak {

struct LaserField {
  double amplitude = 0.0;  // A0, a.u.
  double omega = 0.0569;   // a.u. (800 nm)
  double fwhm = 200.0;     // FWHM of the cos^2 field envelope, a.u.; support |t| <= fwhm
  double cep = 0.0;

  void validate() const;
  double envelope(double t) const;
  double vector_potential(double t) const;  // A_L(t) = A0 env(t) cos(omega t + cep)
};

// Cumulative trapezoid of (k + A_L)^2 / 2 + Ip on t_start + i * step.
struct ActionTable {
  double t_start = 0.0;
  double step = 0.0;
  std::vector<double> values;

  double t_end() const { return t_start + step * static_cast<double>(values.size() - 1); }
  // Linear interpolation; throws DomainError outside the table.
  double at(double t) const;
};

ActionTable action_table(double k, const LaserField& laser, double ip, double t_start, double step,
                         std::size_t count);

// S(t) from t_start with at most `step` per trapezoid panel.
double action(double k, double t, const LaserField& laser, double ip, double t_start, double step);

// A_X(s) on a uniform grid centred on the pulse's mean group delay, from
// A_X(w) = E_X(w) / (i w).
struct XuvField {
  std::vector<double> times;
  std::vector<double> values;
};

// step must give at least 10 points per period of the highest grid
// frequency (ConfigurationError otherwise).
XuvField xuv_vector_potential(const pulse::SpectralPulse& p, double step, double half_width);

// Half width that holds the pulse: 8 transform-limited FWHM durations plus
// 4 group-delay spreads.
double default_half_width(const pulse::SpectralPulse& p);

// matrix_element overrides <k|k_z|i>; otherwise the hydrogen-like plane
// wave element with beta = sqrt(2 Ip).
std::complex<double> sfa_amplitude(double k, double theta_k, const XuvField& xuv, const LaserField& laser, double ip,
                                   double delay, std::optional<double> matrix_element = std::nullopt);

struct StreakOptions {
  std::optional<double> step;        // default: 1/20 of the shortest XUV period
  std::optional<double> half_width;  // default: default_half_width
  std::optional<double> matrix_element;
};

// |c_k|^2 at theta_k = 0 over electron energies and XUV delays; kind "streak".
model::Spectrogram streak_spectrogram(const pulse::SpectralPulse& xuv, const LaserField& laser, double ip,
                                      std::span<const double> energies, std::span<const double> delays,
                                      const StreakOptions& opt = {});

// Energy centroid of each delay row.
std::vector<double> centroids(const model::Spectrogram& s);

// (p0 - A_L(t0))^2 / 2
double classical_energy(double p0, const LaserField& laser, double t0);

}  // namespace panda::streak
