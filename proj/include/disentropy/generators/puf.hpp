#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "disentropy/signal.hpp"

namespace disentropy::generators {

enum class PufDefect { none, dynamics, fixed_prefix, fixed_sample };

/// Algorithm of the deterministic dynamics defect: a sample >= high forces
/// the next one to after_high, a sample <= low forces it to after_low.
/// Conditions are evaluated on the raw response, so a forced value never
/// triggers the rule itself.
struct DynamicsRule {
  double high = 0.9;
  double low = 0.1;
  double after_high = 0.1;
  double after_low = 0.9;
};

struct PufConfig {
  std::size_t response_len = 128;
  std::size_t n_responses = 100;
  std::size_t n_instances = 100;
  PufDefect defect = PufDefect::none;
  DynamicsRule dynamics{};
  std::vector<double> prefix{0.2, 0.1};
  std::size_t sample_index = 0;
  double sample_value = 0.5;
  /// Instance i draws its responses from MT19937(seed + i).
  std::uint32_t seed = 1;

  /// Throws config_error on inconsistent sizes or values outside [0, 1].
  void validate() const;
};

/// Applies the dynamics rule to one response in place.
void apply_dynamics(std::span<double> response, const DynamicsRule& rule);

/// Responses of instance `instance`, drawn sequentially from its stream.
/// Reference and defective fleets with the same seed share the raw draws.
std::vector<Signal> puf_instance_responses(const PufConfig& cfg, std::size_t instance);

/// Every instance of the fleet: result[i] holds the responses of instance i.
std::vector<std::vector<Signal>> puf_responses(const PufConfig& cfg);

/// Joins signals in order. Throws empty_list or mixed_domain.
Signal concatenate(std::span<const Signal> parts);

}  // namespace disentropy::generators
