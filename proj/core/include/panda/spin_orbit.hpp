#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "panda/pulse.hpp"
#include "panda/units.hpp"

// Fine-structure (4p_1/2, 4p_3/2) wave packet of a single-electron alkali,
// prepared from 4s_1/2 by a laser pulse E_L and ionized by E_X into
// eps s_1/2, eps d_3/2 and eps d_5/2. Defaults are the potassium numbers.
namespace panda::model {

struct SOConfig {
  pulse::SpectralPulse laser;
  double excitation_half = units::eV_to_au(1.610);   // 4s -> 4p_1/2
  double excitation_three_half = units::eV_to_au(1.617);
  double ground = units::eV_to_au(-4.341);           // 4s_1/2
  double so_split = units::eV_to_au(7.15517e-3);

  // Throws ConfigurationError unless the split matches the difference of the
  // excitation energies within 0.2 meV.
  void validate() const;

  // 4p_1/2 sits at ground + excitation_half; 4p_3/2 is so_split above it.
  double level_half() const { return ground + excitation_half; }
  double level_three_half() const { return level_half() + so_split; }
};

// Uncoupled reduced radial elements <eps s||r||4p>, <eps d||r||4p>, <4p||r||4s>.
struct SORadial {
  double s = 1.0;
  double d = 1.0;
  double p = 1.0;
};

// Final-state amplitudes for s_1/2, d_3/2, d_5/2, split by intermediate j'.
// e_half / e_three_half are the products E_X E_L along the two paths.
struct SOAmplitudes {
  std::array<std::complex<double>, 3> via_half{};
  std::array<std::complex<double>, 3> via_three_half{};
  std::complex<double> total(int channel) const { return via_half[channel] + via_three_half[channel]; }
};

// Brute-force Wigner-Eckart sum for initial 2m = +-1.
SOAmplitudes so_amplitudes(std::complex<double> e_half, std::complex<double> e_three_half, const SORadial& radial,
                           int two_m);

struct SOClosedForm {
  double s = 0.0;
  double d = 0.0;
  double total() const { return s + d; }
};

// (1/3^4) p^2 { s^2 (5 + 4 cos theta) + d^2 (2/5)(8 + cos theta) }, unit fields
SOClosedForm so_closed_form(double theta, const SORadial& radial = {});

// Theta = [phi_L(w_3/2,i) + phi_X(eps - e_3/2)] - [phi_L(w_1/2,i) + phi_X(eps - e_1/2)]
double so_theta(const SOConfig& cfg, const pulse::SpectralPulse& xuv, double epsilon);

struct SOSpectrum {
  std::vector<double> energies;
  std::vector<double> theta;
  std::vector<double> total;
  std::vector<double> s_half;
  std::vector<double> d_three_half;
  std::vector<double> d_five_half;
  std::vector<double> s_beat_phase;  // arg of the cross term in each modulated channel
  std::vector<double> d_beat_phase;
  std::vector<bool> xuv_warning;     // |E_X| differs by > 1% across the split
  bool laser_warning = false;        // |E_L| differs by > 1% between the two lines
  std::vector<std::string> warnings;
};

SOSpectrum so_spectrum(const SOConfig& cfg, const pulse::SpectralPulse& xuv, const SORadial& radial,
                       std::span<const double> energies, int two_m = 1);

}  // namespace panda::model
