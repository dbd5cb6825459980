#include "panda/atomic/fano.hpp"

#include "panda/errors.hpp"

namespace panda::atomic {

void FanoParams::validate() const {
  if (!(width > 0.0)) throw DomainError("FanoParams: width must be > 0");
}

double reduced_energy(const FanoParams& fp, double epsilon) {
  fp.validate();
  return (epsilon - fp.resonance_energy) / (0.5 * fp.width);
}

std::complex<double> fano_factor(const FanoParams& fp, double epsilon) {
  const double ef = reduced_energy(fp, epsilon);
  return std::complex<double>(fp.q + ef, 0.0) / std::complex<double>(1.0, -ef);
}

std::complex<double> fano_dress(double z, const FanoParams& fp, double epsilon) {
  return fano_factor(fp, epsilon) * z;
}

double fano_lineshape(const FanoParams& fp, double epsilon) {
  const double ef = reduced_energy(fp, epsilon);
  return (fp.q + ef) * (fp.q + ef) / (1.0 + ef * ef);
}

}  // namespace panda::atomic
