#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "disentropy/signal.hpp"

namespace disentropy::generators {

/// Comparator: sample >= threshold -> 1, else 0.
Signal binarize(const Signal& signal, double threshold = 0.5);

inline constexpr int kMinLevels = 2;
inline constexpr int kMaxLevels = 10;
inline constexpr double kMaxLevelNoise = 0.1;

/// Snaps each sample to the nearest of `levels` equispaced values on [0, 1]
/// (ties go to the upper level), then adds N(0, noise_sigma^2) noise drawn
/// from MT19937(noise_seed). Throws level_out_of_range for levels outside
/// [2, 10], invalid_argument for sigma outside [0, 0.1] and domain_error for
/// samples outside [0, 1].
Signal quantize_levels(const Signal& signal, int levels, double noise_sigma, std::uint32_t noise_seed);

/// Diagonal line: samples start, start + p, start + 2p, ... are overwritten
/// by start_value + slope * j for the j-th occurrence. Without an explicit
/// slope the ramp climbs from start_value to 1 across all occurrences.
/// Values above 1 wrap around into [0, 1).
struct LineInjection {
  std::size_t period = 1;
  std::size_t start = 0;
  double start_value = 0.0;
  std::optional<double> slope;

  void validate(std::size_t n) const;
};

/// Indices touched by the injection on a signal of length n.
std::vector<std::size_t> line_positions(std::size_t n, const LineInjection& inj);

/// Ramp value of the j-th occurrence out of `count`.
double line_value(const LineInjection& inj, std::size_t j, std::size_t count);

Signal inject_line(const Signal& signal, const LineInjection& inj);

/// Overwrites the same positions with fresh MT19937(seed) uniforms: a signal
/// with identical random content elsewhere but no line, used as a null model.
Signal inject_noise(const Signal& signal, const LineInjection& inj, std::uint32_t seed);

}  // namespace disentropy::generators
