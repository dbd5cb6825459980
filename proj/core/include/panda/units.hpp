#pragma once

#include <numbers>

// Hartree atomic units internally (hbar = e = m = a0 = 1). Everything crossing
// the CLI or file boundary goes through these conversions.
namespace panda::units {

inline constexpr double pi = std::numbers::pi;

inline constexpr double hartree_eV = 27.211386245988;     // CODATA 2018
inline constexpr double au_time_as = 24.188843265857;     // CODATA 2018
inline constexpr double au_time_fs = au_time_as * 1.0e-3;
inline constexpr double fine_structure = 1.0 / 137.035999084;
inline constexpr double bohr2_Mb = 28.0028;               // a0^2 in megabarn
inline constexpr double hc_eV_nm = 1239.84198433;

constexpr double eV_to_au(double e) { return e / hartree_eV; }
constexpr double au_to_eV(double e) { return e * hartree_eV; }
constexpr double as_to_au(double t) { return t / au_time_as; }
constexpr double au_to_as(double t) { return t * au_time_as; }
constexpr double fs_to_au(double t) { return t / au_time_fs; }
constexpr double au_to_fs(double t) { return t * au_time_fs; }
// group-delay dispersion, time^2
constexpr double as2_to_au(double g) { return g / (au_time_as * au_time_as); }
constexpr double au_to_as2(double g) { return g * au_time_as * au_time_as; }
constexpr double nm_to_omega_au(double lambda_nm) { return eV_to_au(hc_eV_nm / lambda_nm); }
constexpr double deg_to_rad(double d) { return d * pi / 180.0; }
constexpr double rad_to_deg(double r) { return r * 180.0 / pi; }

}  // namespace panda::units
