#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "disentropy/error.hpp"
#include "disentropy/metrics/entropy.hpp"
#include "disentropy/signal.hpp"

namespace disentropy::metrics {

struct AnalyzeOptions {
  EntropyParams apen = EntropyParams::apen_defaults(2);
  EntropyParams fuzen = EntropyParams::fuzen_defaults(2);
  bool disentropy = true;
  bool approximate_entropy = true;
  bool fuzzy_entropy = true;
  /// NIST p-values are only computed for binary signals.
  bool pvalue = true;
};

struct MetricFailure {
  std::string metric;  // "disentropy", "apen", "fuzen", "apen_pvalue"
  std::optional<int> m;
  ErrorCode code = ErrorCode::invalid_argument;
  std::string message;
};

struct MetricReport {
  std::size_t n_samples = 0;
  Domain domain;
  std::optional<double> disentropy_d2;
  std::optional<double> disentropy_score;
  std::map<int, double> apen;
  std::map<int, double> fuzen;
  std::map<int, double> apen_pvalue;
  std::vector<int> m_list;
  AnalyzeOptions options;
  Metadata signal_meta;
  std::vector<MetricFailure> failures;

  /// Number of individual values that were computed.
  [[nodiscard]] std::size_t value_count() const;
};

/// Computes every requested metric for each m. Failures are recorded per
/// metric and never abort the remaining computations. Throws only for an
/// empty or invalid m_list.
MetricReport analyze(const Signal& signal, std::span<const int> m_list,
                     const AnalyzeOptions& options = {});

}  // namespace disentropy::metrics
