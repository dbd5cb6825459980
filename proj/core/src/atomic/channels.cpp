#include "panda/atomic/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "panda/atomic/angular.hpp"
#include "panda/errors.hpp"
#include "panda/parallel.hpp"

namespace panda::atomic {

ChannelTable::ChannelTable(int l, int m, std::vector<double> energies, std::vector<Channel> channels)
    : l_(l), m_(m), energies_(std::move(energies)), channels_(std::move(channels)) {
  if (l_ < 0 || std::abs(m_) > l_) throw DomainError("ChannelTable: need |m| <= l");
  if (energies_.empty()) throw DomainError("ChannelTable: no energies");
  for (std::size_t i = 1; i < energies_.size(); ++i) {
    if (!(energies_[i] > energies_[i - 1])) throw DomainError("ChannelTable: energies must increase");
  }
  for (const auto& c : channels_) {
    if (std::abs(c.L - l_) != 1) {
      throw SelectionRuleError(fmt::format("ChannelTable: l={} -> L={} is not dipole allowed", l_, c.L));
    }
    if (c.radial.size() != energies_.size() || c.phase.size() != energies_.size()) {
      throw DomainError("ChannelTable: channel size does not match energies");
    }
  }
}

ChannelTable ChannelTable::from_potential(const CentralPotential& pot, const BoundOrbital& orbital, int m,
                                          std::span<const double> energies, const RadialGrid& grid) {
  std::vector<Channel> channels;
  for (int L : {orbital.l - 1, orbital.l + 1}) {
    if (L < std::abs(m)) continue;
    Channel c;
    c.L = L;
    c.angular = cos_theta_element(L, orbital.l, m);
    c.radial.resize(energies.size());
    c.phase.resize(energies.size());
    parallel_for(energies.size(), [&](std::size_t i) {
      const auto wave = solve_continuum(pot, energies[i], L, grid);
      c.radial[i] = radial_dipole(orbital, wave, grid);
      c.phase[i] = wave.phase;
    });
    for (std::size_t i = 1; i < c.phase.size(); ++i) {
      const double d = c.phase[i] - c.phase[i - 1];
      c.phase[i] -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
    }
    channels.push_back(std::move(c));
  }
  return ChannelTable(orbital.l, m, std::vector<double>(energies.begin(), energies.end()), std::move(channels));
}

ChannelTable ChannelTable::constant(int l, int m, int L, double dipole, double phase) {
  Channel c{L, 1.0, {dipole}, {phase}};
  return ChannelTable(l, m, {0.0}, {c});
}

bool ChannelTable::has_channel(int L) const {
  return std::any_of(channels_.begin(), channels_.end(), [L](const Channel& c) { return c.L == L; });
}

std::vector<int> ChannelTable::final_ls() const {
  std::vector<int> ls;
  for (const auto& c : channels_) ls.push_back(c.L);
  return ls;
}

const ChannelTable::Channel& ChannelTable::find(int L) const {
  for (const auto& c : channels_) {
    if (c.L == L) return c;
  }
  throw DomainError(fmt::format("ChannelTable: no L={} channel for l={}", L, l_));
}

ChannelAmplitude ChannelTable::amplitude(int L, double epsilon) const {
  const Channel& c = find(L);
  if (energies_.size() == 1) return {epsilon, L, c.radial[0], c.phase[0]};
  if (epsilon < energies_.front() || epsilon > energies_.back()) {
    throw DomainError(fmt::format("ChannelTable: energy {} outside [{}, {}]", epsilon, energies_.front(),
                                  energies_.back()));
  }
  auto it = std::upper_bound(energies_.begin(), energies_.end(), epsilon);
  std::size_t j = it == energies_.begin() ? 0 : static_cast<std::size_t>(it - energies_.begin()) - 1;
  j = std::min(j, energies_.size() - 2);
  const double t = (epsilon - energies_[j]) / (energies_[j + 1] - energies_[j]);
  return {epsilon, L, c.radial[j] + t * (c.radial[j + 1] - c.radial[j]),
          c.phase[j] + t * (c.phase[j + 1] - c.phase[j])};
}

std::complex<double> ChannelTable::dipole(int L, double epsilon) const {
  const Channel& c = find(L);
  const double z = c.angular * amplitude(L, epsilon).radial_integral;
  return fano_ ? fano_dress(z, *fano_, epsilon) : std::complex<double>(z, 0.0);
}

ChannelTable ChannelTable::with_fano(const FanoParams& fp) const {
  fp.validate();
  ChannelTable t = *this;
  t.fano_ = fp;
  return t;
}

ChannelTable ChannelTable::scaled(double factor) const {
  ChannelTable t = *this;
  for (auto& c : t.channels_) {
    for (double& r : c.radial) r *= factor;
  }
  return t;
}

ChannelTable ChannelTable::sign_flipped_above(double threshold) const {
  ChannelTable t = *this;
  for (auto& c : t.channels_) {
    for (std::size_t i = 0; i < t.energies_.size(); ++i) {
      if (t.energies_[i] >= threshold) c.radial[i] = -c.radial[i];
    }
  }
  return t;
}

}  // namespace panda::atomic
