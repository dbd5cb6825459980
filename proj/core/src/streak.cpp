#include "panda/streak.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "panda/atomic/cross_section.hpp"
#include "panda/errors.hpp"
#include "panda/parallel.hpp"
#include "panda/units.hpp"

namespace panda::streak {

namespace {
constexpr double pi = std::numbers::pi;
}

void LaserField::validate() const {
  if (!(amplitude >= 0.0)) throw DomainError("LaserField: amplitude must be >= 0");
  if (!(omega > 0.0)) throw DomainError("LaserField: omega must be positive");
  if (!(fwhm > 0.0)) throw DomainError("LaserField: fwhm must be positive");
}

double LaserField::envelope(double t) const {
  if (std::abs(t) > fwhm) return 0.0;
  const double c = std::cos(pi * t / (2.0 * fwhm));
  return c * c;
}

double LaserField::vector_potential(double t) const {
  return amplitude * envelope(t) * std::cos(omega * t + cep);
}

double ActionTable::at(double t) const {
  if (values.empty() || t < t_start || t > t_end()) {
    throw DomainError(fmt::format("action: t = {} outside the tabulated range", t));
  }
  const double x = (t - t_start) / step;
  const auto i = std::min(static_cast<std::size_t>(x), values.size() - 2);
  const double f = x - static_cast<double>(i);
  return values[i] + f * (values[i + 1] - values[i]);
}

ActionTable action_table(double k, const LaserField& laser, double ip, double t_start, double step,
                         std::size_t count) {
  if (!(step > 0.0) || count < 2) throw DomainError("action_table: need step > 0 and count >= 2");
  ActionTable t{t_start, step, std::vector<double>(count, 0.0)};
  auto f = [&](double time) {
    const double v = k + laser.vector_potential(time);
    return 0.5 * v * v + ip;
  };
  double prev = f(t_start);
  for (std::size_t i = 1; i < count; ++i) {
    const double cur = f(t_start + step * static_cast<double>(i));
    t.values[i] = t.values[i - 1] + 0.5 * step * (prev + cur);
    prev = cur;
  }
  return t;
}

double action(double k, double t, const LaserField& laser, double ip, double t_start, double step) {
  if (t < t_start) throw DomainError("action: t before the start of the integration");
  if (t == t_start) return 0.0;
  const auto panels = static_cast<std::size_t>(std::ceil((t - t_start) / step));
  const double h = (t - t_start) / static_cast<double>(panels);
  return action_table(k, laser, ip, t_start, h, panels + 1).values.back();
}

double default_half_width(const pulse::SpectralPulse& p) {
  const double tl = 4.0 * std::log(2.0) / pulse::intensity_fwhm(p);
  return 8.0 * tl + 4.0 * pulse::group_delay_spread(p);
}

XuvField xuv_vector_potential(const pulse::SpectralPulse& p, double step, double half_width) {
  const double wmax = p.grid().back();
  if (!(step > 0.0) || step > 2.0 * pi / wmax / 10.0) {
    throw ConfigurationError(
        fmt::format("streak time step {} a.u. gives fewer than 10 points per XUV period", step));
  }
  // centre on the intensity-weighted group delay
  const auto gd = pulse::group_delay(p);
  const auto mag = p.magnitude();
  double wsum = 0.0;
  double centre = 0.0;
  for (std::size_t i = 0; i < gd.size(); ++i) {
    wsum += mag[i] * mag[i];
    centre += mag[i] * mag[i] * gd[i];
  }
  centre = wsum > 0.0 ? centre / wsum : 0.0;

  std::vector<double> amag(mag.size());
  std::vector<double> aphase(mag.size());
  const auto& w = p.grid();
  for (std::size_t i = 0; i < amag.size(); ++i) {
    amag[i] = w[i] > 0.0 ? mag[i] / w[i] : 0.0;
    aphase[i] = p.phase()[i] - pi / 2.0;
  }
  const pulse::SpectralPulse a(p.grid(), std::move(amag), std::move(aphase), p.cep());
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * half_width / step)) + 1;
  const auto times = pulse::uniform_times(centre - half_width, centre - half_width + step * static_cast<double>(n - 1), n);
  auto f = pulse::to_time_domain(a, times);
  return {std::move(f.times), std::move(f.values)};
}

namespace {

std::complex<double> integrate_window(double k, const XuvField& xuv, std::span<const double> al, double ip,
                                      double me) {
  const std::size_t n = xuv.times.size();
  const double h = xuv.times[1] - xuv.times[0];
  auto f = [&](std::size_t i) {
    const double v = k + al[i];
    return 0.5 * v * v + ip;
  };
  double s = 0.0;
  double fprev = f(0);
  std::complex<double> sum = 0.5 * xuv.values[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double fcur = f(i);
    s += 0.5 * h * (fprev + fcur);
    fprev = fcur;
    const double wgt = i + 1 == n ? 0.5 : 1.0;
    sum += wgt * xuv.values[i] * std::polar(1.0, s);
  }
  return std::complex<double>(0.0, -1.0) * me * h * sum;
}

std::vector<double> laser_on_window(const XuvField& xuv, const LaserField& laser, double delay) {
  std::vector<double> al(xuv.times.size());
  for (std::size_t i = 0; i < al.size(); ++i) al[i] = laser.vector_potential(xuv.times[i] + delay);
  return al;
}

double element(double k, double theta_k, double ip, std::optional<double> me) {
  return me ? *me : atomic::plane_wave_me(k, theta_k, std::sqrt(2.0 * ip));
}

}  // namespace

std::complex<double> sfa_amplitude(double k, double theta_k, const XuvField& xuv, const LaserField& laser, double ip,
                                   double delay, std::optional<double> matrix_element) {
  laser.validate();
  if (xuv.times.size() < 2) throw DomainError("sfa_amplitude: empty XUV table");
  // the action phase is counted from the window start; a constant offset
  // drops out of |c|^2
  const auto al = laser_on_window(xuv, laser, delay);
  return integrate_window(k, xuv, al, ip, element(k, theta_k, ip, matrix_element));
}

model::Spectrogram streak_spectrogram(const pulse::SpectralPulse& xuv, const LaserField& laser, double ip,
                                      std::span<const double> energies, std::span<const double> delays,
                                      const StreakOptions& opt) {
  laser.validate();
  if (!(ip > 0.0)) throw DomainError("streak_spectrogram: Ip must be positive");
  if (energies.empty() || delays.empty()) throw ConfigurationError("streak_spectrogram: empty grid");
  const double step = opt.step.value_or(2.0 * pi / xuv.grid().back() / 20.0);
  const double hw = opt.half_width.value_or(default_half_width(xuv));
  const auto field = xuv_vector_potential(xuv, step, hw);

  model::Spectrogram s;
  s.kind = "streak";
  s.energies.assign(energies.begin(), energies.end());
  s.delays.assign(delays.begin(), delays.end());
  s.effective_binding = ip;
  const std::size_t ne = energies.size();
  s.values.assign(ne * delays.size(), 0.0);
  parallel_for(delays.size(), [&](std::size_t id) {
    const auto al = laser_on_window(field, laser, delays[id]);
    for (std::size_t ie = 0; ie < ne; ++ie) {
      if (!(energies[ie] > 0.0)) throw DomainError("streak_spectrogram: energies must be positive");
      const double k = std::sqrt(2.0 * energies[ie]);
      const auto c = integrate_window(k, field, al, ip, element(k, 0.0, ip, opt.matrix_element));
      s.values[id * ne + ie] = std::norm(c);
    }
  });
  s.meta["pulse"] = model::describe(xuv);
  s.meta["laser"] = {{"A0_au", laser.amplitude},
                     {"wavelength_nm", units::hc_eV_nm / units::au_to_eV(laser.omega)},
                     {"fwhm_fs", units::au_to_fs(laser.fwhm)},
                     {"cep_rad", laser.cep}};
  s.meta["ip_eV"] = units::au_to_eV(ip);
  s.meta["time_step_as"] = units::au_to_as(step);
  s.meta["matrix_element"] = opt.matrix_element ? nlohmann::json(*opt.matrix_element) : nlohmann::json("plane_wave");
  return s;
}

std::vector<double> centroids(const model::Spectrogram& s) {
  std::vector<double> c(s.delays.size(), 0.0);
  for (std::size_t id = 0; id < s.delays.size(); ++id) {
    double w = 0.0;
    double acc = 0.0;
    for (std::size_t ie = 0; ie < s.energies.size(); ++ie) {
      w += s.at(id, ie);
      acc += s.at(id, ie) * s.energies[ie];
    }
    c[id] = w > 0.0 ? acc / w : 0.0;
  }
  return c;
}

double classical_energy(double p0, const LaserField& laser, double t0) {
  const double p = p0 - laser.vector_potential(t0);
  return 0.5 * p * p;
}

}  // namespace panda::streak
