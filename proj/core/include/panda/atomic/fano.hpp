#pragma once

#include <complex>

namespace panda::atomic {

struct FanoParams {
  double q = 0.0;
  double resonance_energy = 0.0;  // a.u.
  double width = 1.0;             // Gamma, a.u., > 0

  void validate() const;
};

// eps_F = (eps - eps_r) / (Gamma / 2)
double reduced_energy(const FanoParams& fp, double epsilon);

// (q + eps_F) / (1 - i eps_F)
std::complex<double> fano_factor(const FanoParams& fp, double epsilon);

// Correlated element Z = (q + eps_F) / (1 - i eps_F) * z for the real,
// uncorrelated element z.
std::complex<double> fano_dress(double z, const FanoParams& fp, double epsilon);

// (q + eps_F)^2 / (1 + eps_F^2)
double fano_lineshape(const FanoParams& fp, double epsilon);

}  // namespace panda::atomic
