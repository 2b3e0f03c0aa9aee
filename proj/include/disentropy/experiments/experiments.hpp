#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "disentropy/experiments/result.hpp"
#include "disentropy/experiments/spec.hpp"

namespace disentropy::experiments {

struct RunOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  /// Called after each finished cell with (done, total); may be empty.
  std::function<void(std::size_t, std::size_t)> progress;
};

ExperimentResult run_convergence(const ConvergenceSpec& spec, const RunOptions& opts = {});
ExperimentResult run_prng_compare(const PrngCompareSpec& spec, const RunOptions& opts = {});
ExperimentResult run_disentropy_vs_n(const DisentropyVsNSpec& spec, const RunOptions& opts = {});
ExperimentResult run_m_sweep(const MSweepSpec& spec, const RunOptions& opts = {});
ExperimentResult run_multilevel(const MultilevelSpec& spec, const RunOptions& opts = {});
ExperimentResult run_line_scan(const LineScanSpec& spec, const RunOptions& opts = {});
ExperimentResult run_puf_dynamics(const PufDynamicsSpec& spec, const RunOptions& opts = {});
ExperimentResult run_puf_fixed_prefix(const PufPrefixSpec& spec, const RunOptions& opts = {});
ExperimentResult run_trng_compare(const TrngSpec& spec, const RunOptions& opts = {});

ExperimentResult run(const ExperimentSpec& spec, const RunOptions& opts = {});

/// Names accepted by default_spec: convergence, prng-analog, prng-binary,
/// d-vs-n, m-sweep, multilevel, line-scan, puf-dynamics, puf-prefix, trng.
const std::vector<std::string>& registry_names();
/// Throws config_error listing the registry for unknown names.
ExperimentSpec default_spec(std::string_view name);

/// Relative difference of fleet means, (mean(test) - mean(ref)) / mean(ref).
double relative_difference(double ref_mean, double test_mean);

/// Paper convention: a relative difference whose magnitude is below 1% and
/// below the fleet's relative sd is displayed as exactly 0.
double displayed_difference(double rel_diff, double relative_sd);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
/// Ordinary least squares; throws invalid_argument for fewer than 2 points
/// or constant x.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace disentropy::experiments
