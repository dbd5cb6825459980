#pragma once

#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "panda/model.hpp"
#include "panda/pulse.hpp"

namespace panda::retrieval {

// One column fitted to offset + c cos(dw tau) + s sin(dw tau), i.e.
// offset + amplitude cos(dw tau + phase).
struct BeatFit {
  double offset = 0.0;
  double amplitude = 0.0;  // sqrt(c^2 + s^2)
  double phase = 0.0;      // atan2(-s, c), in (-pi, pi]
  double contrast = 0.0;   // amplitude / offset
};

// Linear least squares with known dw. Throws ConfigurationError when the
// design is rank deficient.
BeatFit fit_column(std::span<const double> delays, std::span<const double> values, double dw);

// Requires >= 6 samples per beat period and >= 2 periods of delay span.
std::vector<BeatFit> extract_beat_phase(const model::Spectrogram& s, double dw);

// Folds into (-pi/2, pi/2]; returns 1 when pi had to be removed.
int fold_half_period(double& phase);

struct Unwrapped {
  std::vector<double> phase;
  std::vector<int> branch;    // parity of the pi jumps removed so far (period pi only)
  std::vector<bool> bridged;  // masked entries filled by linear interpolation
};

// Removes jumps of `period` scanning in energy. Masked entries take no part
// and are bridged linearly between their unmasked neighbours (held constant
// past the ends). An empty mask means nothing is masked.
Unwrapped unwrap(std::span<const double> phases, const std::vector<bool>& mask = {},
                 double period = 2.0 * std::numbers::pi);

// theta / dw - zero_ref
std::vector<double> to_group_delay(std::span<const double> phases, double dw, double zero_ref = 0.0);

// Delegates to pulse::phase_from_group_delay on the mean-frequency grid.
std::vector<double> reconstruct_phase(std::span<const double> gd, const pulse::FrequencyGrid& grid, double anchor,
                                      double phi0);

struct RetrievalOptions {
  double threshold = model::contrast_threshold;
  // Fold sign(B) half-period jumps into a branch tag (period-pi unwrap).
  // false = plain 2 pi unwrap of the fitted phase.
  bool fold_branches = true;
  double zero_ref = 0.0;
  std::optional<double> anchor;  // default: offset-weighted mean frequency
  double phi0 = 0.0;
};

struct RetrievalResult {
  std::vector<double> energies;
  std::vector<double> omega;           // eps + Ip, the mean frequency of the pair
  std::vector<double> beat_phase;      // unwrapped
  std::vector<double> group_delay;
  std::vector<double> spectral_phase;  // anchored integral of group_delay
  std::vector<bool> mask;
  std::vector<bool> bridged;
  std::vector<int> branch;
  std::vector<double> contrast;
  std::vector<double> offset;
  double splitting = 0.0;
  double effective_binding = 0.0;
  double anchor = 0.0;
  double zero_ref = 0.0;
  std::optional<double> rms_error_vs_truth;
};

RetrievalResult retrieve(const model::Spectrogram& s, const RetrievalOptions& opt = {});

struct Comparison {
  double rms = 0.0;        // group delay, a.u., after removing the mean offset
  double offset = 0.0;     // mean(retrieved - truth)
  double max_abs = 0.0;
  double truth_span = 0.0; // max - min of the true group delay over the compared columns
  std::size_t count = 0;
};

// Compares unmasked, unbridged columns whose omega lies on the truth grid.
// Throws DomainError when none do.
Comparison compare(const pulse::SpectralPulse& truth, const RetrievalResult& r);

}  // namespace panda::retrieval
