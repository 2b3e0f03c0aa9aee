#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "disentropy/generators/puf.hpp"
#include "disentropy/signal.hpp"

namespace disentropy::experiments {

/// Grid of sizes 100, 200, ..., 1000 followed by 1500, 2000, ..., 10000.
std::vector<std::size_t> default_convergence_grid();

struct ConvergenceSpec {
  std::string preset = "mt0";
  int m = 2;
  std::vector<std::size_t> n_grid = default_convergence_grid();
  /// Oscillation magnitude at N is the population sd over grid points in [N/2, N].
  std::vector<std::size_t> windows{1000, 10000};
};

struct PrngCompareSpec {
  Domain domain = Domain::analog();
  std::vector<int> m_list{2, 3};
  std::size_t n = 10000;
  std::string baseline = "mt0";
  std::vector<std::string> presets;  // empty: every preset
  std::vector<std::string> good{"mts", "msg", "cpp11", "gnu"};
  std::vector<std::string> suspects{"lcg1", "lcg3", "lcg4"};
  double separation = 10.0;

  static PrngCompareSpec analog();
  static PrngCompareSpec binary();
};

struct DisentropyVsNSpec {
  std::string preset = "lcg-bad";
  std::vector<std::size_t> n_grid;  // empty: 100, 200, ..., 10000
  std::size_t fit_min = 1000;
  std::size_t fit_max = 10000;
  std::size_t probe_n = 400;
};

struct MSweepSpec {
  std::vector<std::string> presets{"mt0", "lcg-bad"};
  std::vector<int> m_list{1, 2, 3, 4, 5, 6, 7, 8};
  std::size_t n = 10000;
  /// Contrasts below noise_multiplier * tail_sigma count as indistinguishable.
  double tail_sigma = 1e-3;
  double noise_multiplier = 5.0;
};

struct MultilevelSpec {
  std::string preset = "mt0";
  std::size_t n = 10000;
  std::vector<int> levels{2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> sigmas{0.0, 0.025, 0.05, 0.075, 0.1};
  int m = 3;
  std::uint32_t noise_seed = 1;
};

struct LineScanSpec {
  std::string preset = "mt0";
  std::size_t n = 10000;
  std::vector<int> m_list{2, 3, 4};
  std::vector<std::size_t> entropy_periods{1, 2, 3, 4, 5, 6};
  std::vector<std::size_t> disentropy_periods{1, 2, 5, 10, 20, 30, 40, 50, 64, 100};
  std::size_t start = 0;
  double start_value = 0.0;
  /// Null model: the same positions refilled with fresh uniforms.
  std::size_t shams = 16;
  std::uint32_t sham_seed = 1;
  double multiplier = 5.0;
};

struct PufDynamicsSpec {
  generators::PufConfig puf{};
  std::vector<int> m_list{1, 2, 3};
  /// Responses of instance 0 scored one by one; 0 disables the variant.
  std::size_t per_response = 500;
};

struct FixedSampleCell {
  std::size_t index = 0;
  double value = 0.5;
  std::size_t n_responses = 100;
};

struct PufPrefixSpec {
  generators::PufConfig puf{};
  std::vector<std::size_t> n_resp_grid{100, 200, 500};
  std::vector<int> m_list{1, 2, 3};
  bool fixed_sample = true;
  FixedSampleCell sample{};
};

struct TrngSpec {
  std::vector<std::string> files;
  std::vector<int> m_list{2, 3};
  std::size_t min_values = 10000;
  std::string reference = "mt0";
  double entropy_tolerance = 0.02;
  double disentropy_low = 1e-5;
  double disentropy_high = 1e-3;
};

using ExperimentSpec = std::variant<ConvergenceSpec, PrngCompareSpec, DisentropyVsNSpec, MSweepSpec,
                                    MultilevelSpec, LineScanSpec, PufDynamicsSpec, PufPrefixSpec, TrngSpec>;

/// Registry name of the experiment described by `spec`.
std::string experiment_name(const ExperimentSpec& spec);
/// Canonical JSON text of every parameter (stable key order).
std::string canonical_json(const ExperimentSpec& spec);

}  // namespace disentropy::experiments
