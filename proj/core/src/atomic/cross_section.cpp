#include "panda/atomic/cross_section.hpp"

#include <cmath>
#include <numbers>

#include "panda/atomic/angular.hpp"
#include "panda/errors.hpp"
#include "panda/parallel.hpp"
#include "panda/units.hpp"

namespace panda::atomic {

double cross_section_Mb(double photon_energy, int l, std::span<const double> radial_by_L) {
  double sum = 0.0;
  for (int L : {l - 1, l + 1}) {
    if (L < 0 || static_cast<std::size_t>(L) >= radial_by_L.size()) continue;
    const double r = radial_by_L[static_cast<std::size_t>(L)];
    sum += averaged_cos_theta_squared(L, l) * r * r;
  }
  constexpr double pi = std::numbers::pi;
  return 4.0 * pi * pi * units::fine_structure * photon_energy * sum * units::bohr2_Mb;
}

std::vector<CrossSectionPoint> cross_section(const CentralPotential& pot, const BoundOrbital& orbital,
                                             std::span<const double> electron_energies,
                                             const RadialGrid& grid) {
  std::vector<CrossSectionPoint> out(electron_energies.size());
  parallel_for(electron_energies.size(), [&](std::size_t i) {
    const double eps = electron_energies[i];
    std::vector<double> radial(static_cast<std::size_t>(orbital.l + 2), 0.0);
    for (int L : {orbital.l - 1, orbital.l + 1}) {
      if (L < 0) continue;
      const auto wave = solve_continuum(pot, eps, L, grid);
      radial[static_cast<std::size_t>(L)] = radial_dipole(orbital, wave, grid);
    }
    const double omega = eps + std::abs(orbital.energy);
    out[i] = {eps, omega, cross_section_Mb(omega, orbital.l, radial)};
  });
  return out;
}

double plane_wave_me(double k, double theta_k, double Z) {
  if (!(k >= 0.0)) throw DomainError("plane_wave_me: k must be >= 0");
  const double beta = Z;
  const double d = k * k + beta * beta;
  return std::pow(2.0, 1.5) / std::numbers::pi * std::pow(beta, 2.5) * k * std::cos(theta_k) / (d * d);
}

}  // namespace panda::atomic
