#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace panda::atomic {

// V(r) = -(Z + a exp(-b r)) / r. a = 0 is pure Coulomb.
struct CentralPotential {
  double Z = 1.0;
  double a = 0.0;
  double b = 1.0;

  void validate() const;
  bool is_coulomb() const { return a == 0.0; }
  double operator()(double r) const;
  double short_range(double r) const;  // -a exp(-b r) / r
};

// Uniform grid r_i = (i + 1) h, i = 0 .. size-1. The origin is implicit
// (u(0) = 0) and enters the trapezoid weights.
class RadialGrid {
 public:
  RadialGrid(double step, double r_max);

  // step = min(h_max, lambda_min / 20) where lambda_min is the free-electron
  // wavelength at eps_max.
  static RadialGrid for_energy(double eps_max, double r_max = 200.0, double h_max = 0.005);

  double step() const { return h_; }
  std::size_t size() const { return r_.size(); }
  double r(std::size_t i) const { return r_[i]; }
  double r_max() const { return r_.back(); }
  std::span<const double> points() const { return r_; }

  // Trapezoid over [0, r_max] with u(0) = 0.
  double integrate(std::span<const double> f) const;

 private:
  double h_;
  std::vector<double> r_;
};

struct BoundOrbital {
  int n = 1;
  int l = 0;
  double energy = 0.0;
  std::vector<double> radial;  // u = r R, positive near the origin
};

struct ContinuumWave {
  double epsilon = 0.0;
  int L = 0;
  double phase = 0.0;              // eta_L = sigma_L + delta_L
  double coulomb_phase = 0.0;      // sigma_L
  double short_range_phase = 0.0;  // delta_L, in (-pi, pi]
  // Absolute relative deviation of the amplitude refitted at ~3/4 r_max from sqrt(2/(pi k)).
  double amplitude_residual = 0.0;
  std::vector<double> radial;      // energy normalized, positive near the origin
};

// a = 0: analytic hydrogenic orbital (energy -Z^2/2n^2). Otherwise Numerov
// shooting with node-count bisection. Throws ConvergenceError if the
// eigenvalue cannot be bracketed.
BoundOrbital solve_bound(const CentralPotential& pot, int n, int l, const RadialGrid& grid);

// Outward Numerov integration, matched near r_max to Coulomb F/G for the
// asymptotic charge Z. Throws DomainError for epsilon <= 0 and GridError when
// the grid under-resolves the oscillation or the short-range tail.
ContinuumWave solve_continuum(const CentralPotential& pot, double epsilon, int L, const RadialGrid& grid);

// Integral of u_cont * r * u_bound. Throws SelectionRuleError unless |L - l| = 1.
double radial_dipole(const BoundOrbital& b, const ContinuumWave& c, const RadialGrid& grid);

// Number of sign changes of u strictly inside the grid, ignoring the
// numerically-zero tail.
int count_nodes(std::span<const double> u);

}  // namespace panda::atomic
