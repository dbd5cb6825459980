#include "panda/spin_orbit.hpp"

#include <cmath>

#include <fmt/core.h>

#include "panda/atomic/angular.hpp"
#include "panda/errors.hpp"

namespace panda::model {

using atomic::half;
using atomic::HalfInteger;

void SOConfig::validate() const {
  const double diff = excitation_three_half - excitation_half;
  if (std::abs(diff - so_split) > units::eV_to_au(0.2e-3)) {
    throw ConfigurationError(fmt::format("SO split {:.5f} meV does not match the excitation energies ({:.5f} meV)",
                                         units::au_to_eV(so_split) * 1e3, units::au_to_eV(diff) * 1e3));
  }
  if (!(so_split > 0.0)) throw ConfigurationError("SO split must be positive");
}

namespace {

// <l_f j m|z|l j' m> from the uncoupled reduced element
double coupled_z(int lf, HalfInteger jf, int l, HalfInteger jp, HalfInteger m, double reduced_radial) {
  const double ratio = atomic::reduced_ck_half(jf, 1, jp) / atomic::reduced_ck(lf, 1, l);
  return atomic::wigner_eckart_z(jf, m, jp, reduced_radial * ratio);
}

}  // namespace

SOAmplitudes so_amplitudes(std::complex<double> e_half, std::complex<double> e_three_half, const SORadial& radial,
                           int two_m) {
  if (two_m != 1 && two_m != -1) throw DomainError("so_amplitudes: 2m must be +-1");
  const HalfInteger m = HalfInteger::from_twice(two_m);
  const HalfInteger ji = half(1);
  const std::array<HalfInteger, 2> jp = {half(1), half(3)};
  struct Final {
    int l;
    HalfInteger j;
    double radial;
  };
  const std::array<Final, 3> finals = {Final{0, half(1), radial.s}, Final{2, half(3), radial.d},
                                       Final{2, half(5), radial.d}};

  SOAmplitudes a;
  for (int k = 0; k < 2; ++k) {
    const double z_pi = coupled_z(1, jp[k], 0, ji, m, radial.p);
    const std::complex<double> field = k == 0 ? e_half : e_three_half;
    for (std::size_t f = 0; f < finals.size(); ++f) {
      const auto& fs = finals[f];
      // j = 5/2 is out of reach from j' = 1/2
      const double z_fp = std::abs(fs.j.twice() - jp[k].twice()) <= 2
                              ? coupled_z(fs.l, fs.j, 1, jp[k], m, fs.radial)
                              : 0.0;
      (k == 0 ? a.via_half : a.via_three_half)[f] = field * z_fp * z_pi;
    }
  }
  return a;
}

SOClosedForm so_closed_form(double theta, const SORadial& radial) {
  const double pref = radial.p * radial.p / 81.0;
  return {pref * radial.s * radial.s * (5.0 + 4.0 * std::cos(theta)),
          pref * radial.d * radial.d * 0.4 * (8.0 + std::cos(theta))};
}

double so_theta(const SOConfig& cfg, const pulse::SpectralPulse& xuv, double epsilon) {
  const double wl_half = cfg.level_half() - cfg.ground;
  const double wl_three = cfg.level_three_half() - cfg.ground;
  return pulse::sample_phase(cfg.laser, wl_three) + pulse::sample_phase(xuv, epsilon - cfg.level_three_half()) -
         pulse::sample_phase(cfg.laser, wl_half) - pulse::sample_phase(xuv, epsilon - cfg.level_half());
}

SOSpectrum so_spectrum(const SOConfig& cfg, const pulse::SpectralPulse& xuv, const SORadial& radial,
                       std::span<const double> energies, int two_m) {
  cfg.validate();
  SOSpectrum out;
  const double wl_half = cfg.level_half() - cfg.ground;
  const double wl_three = cfg.level_three_half() - cfg.ground;
  const auto el_half = pulse::sample(cfg.laser, wl_half);
  const auto el_three = pulse::sample(cfg.laser, wl_three);
  const double lmax = std::max(std::abs(el_half), std::abs(el_three));
  if (lmax > 0.0 && std::abs(std::abs(el_half) - std::abs(el_three)) > 0.01 * lmax) {
    out.laser_warning = true;
    out.warnings.push_back("|E_L| differs by more than 1% between the two fine-structure lines");
  }

  std::size_t flagged = 0;
  for (double eps : energies) {
    const auto ex_half = pulse::sample(xuv, eps - cfg.level_half());
    const auto ex_three = pulse::sample(xuv, eps - cfg.level_three_half());
    const double xmax = std::max(std::abs(ex_half), std::abs(ex_three));
    const bool warn = xmax > 0.0 && std::abs(std::abs(ex_half) - std::abs(ex_three)) > 0.01 * xmax;
    flagged += warn;

    const auto a = so_amplitudes(ex_half * el_half, ex_three * el_three, radial, two_m);
    out.energies.push_back(eps);
    out.theta.push_back(so_theta(cfg, xuv, eps));
    out.s_half.push_back(std::norm(a.total(0)));
    out.d_three_half.push_back(std::norm(a.total(1)));
    out.d_five_half.push_back(std::norm(a.total(2)));
    out.total.push_back(out.s_half.back() + out.d_three_half.back() + out.d_five_half.back());
    out.s_beat_phase.push_back(std::arg(a.via_three_half[0] * std::conj(a.via_half[0])));
    out.d_beat_phase.push_back(std::arg(a.via_three_half[1] * std::conj(a.via_half[1])));
    out.xuv_warning.push_back(warn);
  }
  if (flagged) {
    out.warnings.push_back(
        fmt::format("|E_X(w)| and |E_X(w - w_SO)| differ by more than 1% at {} of {} energies", flagged,
                    energies.size()));
  }
  return out;
}

}  // namespace panda::model
