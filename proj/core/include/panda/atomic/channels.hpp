#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "panda/atomic/fano.hpp"
#include "panda/atomic/radial.hpp"

namespace panda::atomic {

// One (epsilon, L) continuum channel of a bound state.
struct ChannelAmplitude {
  double epsilon = 0.0;
  int L = 0;
  double radial_integral = 0.0;  // <u_eps L | r | u_nl>
  double phase = 0.0;            // eta_L
};

// Dipole channels of one bound state (l, m) tabulated over photoelectron
// energy. dipole() = angular * radial, optionally Fano dressed; angular is
// <L m|cos(theta)|l m> for tables built from a potential. A table with a
// single energy is energy independent.
class ChannelTable {
 public:
  struct Channel {
    int L = 0;
    double angular = 1.0;
    std::vector<double> radial;
    std::vector<double> phase;
  };

  ChannelTable(int l, int m, std::vector<double> energies, std::vector<Channel> channels);

  // Solves the continuum for L = l +- 1 at every energy; eta_L is unwrapped
  // along the energy axis.
  static ChannelTable from_potential(const CentralPotential& pot, const BoundOrbital& orbital, int m,
                                     std::span<const double> energies, const RadialGrid& grid);

  // Energy-independent single channel with a given full dipole element.
  static ChannelTable constant(int l, int m, int L, double dipole, double phase = 0.0);

  int l() const { return l_; }
  int m() const { return m_; }
  std::span<const double> energies() const { return energies_; }
  const std::vector<Channel>& channels() const { return channels_; }
  const std::optional<FanoParams>& fano() const { return fano_; }

  bool has_channel(int L) const;
  std::vector<int> final_ls() const;

  // Throws DomainError for a missing channel or an energy outside the table.
  ChannelAmplitude amplitude(int L, double epsilon) const;
  std::complex<double> dipole(int L, double epsilon) const;

  ChannelTable with_fano(const FanoParams& fp) const;
  ChannelTable scaled(double factor) const;
  // radial -> radial * sign for energies >= threshold (synthetic sign flips)
  ChannelTable sign_flipped_above(double threshold) const;

 private:
  const Channel& find(int L) const;

  int l_;
  int m_;
  std::vector<double> energies_;
  std::vector<Channel> channels_;
  std::optional<FanoParams> fano_;
};

}  // namespace panda::atomic
