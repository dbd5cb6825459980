#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Spectral test pulses.
//
// Sign convention, used by every phase-bearing operation in the library:
//
//     E(t) = (1/2pi) * Integral dw E(w) exp(-i w t),   E(w) = |E(w)| exp(i phi(w))
//
// so a pulse that arrives later by tau carries the extra spectral phase +w*tau
// and its group delay dphi/dw is an arrival time. Only w > 0 is stored; the
// negative axis follows from E*(w) = E(-w), which makes E(t) real.
namespace panda::pulse {

class FrequencyGrid {
 public:
  // Strictly increasing, nonnegative angular frequencies (a.u.), at least two.
  explicit FrequencyGrid(std::vector<double> points);

  static FrequencyGrid uniform(double lo, double hi, std::size_t count);

  std::span<const double> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  bool is_uniform() const { return uniform_; }
  bool contains(double omega) const { return omega >= front() && omega <= back(); }

  // Index i such that points[i] <= omega <= points[i+1]. Throws DomainError
  // outside the grid.
  std::size_t interval(double omega) const;

 private:
  std::vector<double> points_;
  bool uniform_ = false;
};

class SpectralPulse {
 public:
  // phase is the full spectral phase in radians (cep included); cep is kept as
  // a separate record of the constant part.
  SpectralPulse(FrequencyGrid grid, std::vector<double> magnitude, std::vector<double> phase,
                double cep = 0.0);

  const FrequencyGrid& grid() const { return grid_; }
  std::span<const double> magnitude() const { return magnitude_; }
  std::span<const double> phase() const { return phase_; }
  double cep() const { return cep_; }

 private:
  FrequencyGrid grid_;
  std::vector<double> magnitude_;
  std::vector<double> phase_;
  double cep_ = 0.0;
};

struct TemporalField {
  std::vector<double> times;
  std::vector<double> values;
};

// Gaussian spectrum. fwhm_bandwidth is the FWHM of the intensity |E(w)|^2.
struct GaussianPulseSpec {
  double center = 0.0;
  double fwhm_bandwidth = 0.0;
  double gdd = 0.0;        // a.u. time^2
  double delay = 0.0;      // a.u. time
  double amplitude = 1.0;
  double cep = 0.0;

  void validate() const;
};

// phase(w) = cep + delay*(w - center) + (gdd/2)*(w - center)^2.
// The grid must cover center +- 3*fwhm_bandwidth.
SpectralPulse synthesize_gaussian(const GaussianPulseSpec& spec, const FrequencyGrid& grid);

// dphi/dw: 3-point central stencil inside, 3-point one-sided at both edges.
// Second order on uniform and non-uniform grids.
std::vector<double> group_delay(const SpectralPulse& p);
std::vector<double> derivative(std::span<const double> values, const FrequencyGrid& grid);

// Cumulative trapezoid of gd from anchor; the result equals phi0 at anchor.
std::vector<double> phase_from_group_delay(std::span<const double> gd, const FrequencyGrid& grid,
                                           double anchor, double phi0);

// Direct quadrature over the stored half axis with Hermitian completion:
// E(t) = (1/pi) Re Integral_0^inf E(w) exp(-i w t) dw.
TemporalField to_time_domain(const SpectralPulse& p, std::span<const double> times);

// Half-axis integral I(t) = Integral_0^inf E(w) exp(-i w t) dw, trapezoidal.
std::complex<double> half_axis_integral(const SpectralPulse& p, double t);

std::vector<double> uniform_times(double t0, double t1, std::size_t count);

SpectralPulse apply_delay(const SpectralPulse& p, double tau);

// Linear interpolation of magnitude and phase separately.
std::complex<double> sample(const SpectralPulse& p, double omega);
double sample_magnitude(const SpectralPulse& p, double omega);
double sample_phase(const SpectralPulse& p, double omega);

// (1/pi) Integral_0^inf |E(w)|^2 dw, equal to Integral E(t)^2 dt by Parseval.
double spectral_energy(const SpectralPulse& p);
double temporal_energy(const TemporalField& f);

// Intensity-weighted mean frequency and FWHM of |E(w)|^2 (interpolated
// half-maximum crossings).
double centroid_frequency(const SpectralPulse& p);
double intensity_fwhm(const SpectralPulse& p);

// Intensity-weighted standard deviation of the group delay.
double group_delay_spread(const SpectralPulse& p);

}  // namespace panda::pulse
