#pragma once

#include <span>
#include <vector>

#include "panda/atomic/radial.hpp"

namespace panda::atomic {

struct CrossSectionPoint {
  double electron_energy = 0.0;  // a.u.
  double photon_energy = 0.0;    // a.u., epsilon + |e_nl|
  double sigma_Mb = 0.0;
};

// sigma = 4 pi^2 alpha omega sum_L <|<eps L m|z|n l m>|^2>_m * a0^2[Mb],
// summing L = l +- 1 and averaging over the initial m.
std::vector<CrossSectionPoint> cross_section(const CentralPotential& pot, const BoundOrbital& orbital,
                                             std::span<const double> electron_energies,
                                             const RadialGrid& grid);

// Same formula from precomputed radial integrals, one per final L (index =
// L); entries for forbidden L are ignored.
double cross_section_Mb(double photon_energy, int l, std::span<const double> radial_by_L);

// <k|k_z|1s> for a plane wave, (2^{3/2}/pi) beta^{5/2} k cos(theta_k) / (k^2 + beta^2)^2, beta = Z.
double plane_wave_me(double k, double theta_k, double Z = 1.0);

}  // namespace panda::atomic
