#pragma once

namespace panda::atomic {

// sigma_L = arg Gamma(L + 1 - i Z/k), wrapped to (-pi, pi].
double coulomb_phase(double Z, double k, int L);

// Regular and irregular Coulomb functions F_L(eta, rho), G_L(eta, rho) with
// asymptotic forms sin/cos(rho - eta ln 2 rho - L pi/2 + sigma_L).
struct CoulombFG {
  double F = 0.0;
  double G = 0.0;
};

// Throws GridError when the functions cannot be evaluated at rho (over- or
// underflow deep inside the barrier).
CoulombFG coulomb_fg(int L, double eta, double rho);

}  // namespace panda::atomic
