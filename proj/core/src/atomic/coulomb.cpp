#include "panda/atomic/coulomb.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_coulomb.h>
#include <gsl/gsl_sf_gamma.h>

#include <fmt/core.h>

#include "panda/errors.hpp"

namespace panda::atomic {

namespace {

// GSL's default handler aborts; report through return codes instead.
struct GslHandlerOff {
  GslHandlerOff() { gsl_set_error_handler_off(); }
};
const GslHandlerOff gsl_handler_off;

}  // namespace

double coulomb_phase(double Z, double k, int L) {
  if (!(k > 0.0)) throw DomainError("coulomb_phase: k must be positive");
  if (L < 0) throw DomainError("coulomb_phase: L must be >= 0");
  if (Z == 0.0) return 0.0;
  gsl_sf_result lnr, arg;
  const int status = gsl_sf_lngamma_complex_e(L + 1.0, -Z / k, &lnr, &arg);
  if (status != GSL_SUCCESS) {
    throw DomainError(fmt::format("coulomb_phase: lngamma failed ({})", gsl_strerror(status)));
  }
  return arg.val;
}

CoulombFG coulomb_fg(int L, double eta, double rho) {
  gsl_sf_result F, Fp, G, Gp;
  double exp_F = 0.0, exp_G = 0.0;
  const int status = gsl_sf_coulomb_wave_FG_e(eta, rho, static_cast<double>(L), 0, &F, &Fp, &G, &Gp,
                                              &exp_F, &exp_G);
  if (status != GSL_SUCCESS || exp_F != 0.0 || exp_G != 0.0) {
    throw GridError(fmt::format("Coulomb F/G unavailable at L={}, eta={}, rho={} ({})", L, eta, rho,
                                gsl_strerror(status)));
  }
  return {F.val, G.val};
}

}  // namespace panda::atomic
