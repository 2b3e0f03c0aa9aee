#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "disentropy/experiments/experiments.hpp"
#include "disentropy/generators/generate.hpp"
#include "disentropy/metrics/analyze.hpp"

namespace disentropy::experiments::detail {

std::string apen_col(int m);
std::string fuzen_col(int m);
std::string pvalue_col(int m);
inline constexpr const char* kDisentropyCol = "disentropy";

/// Metric columns in output order: disentropy, apen_m*, fuzen_m*.
std::vector<std::string> metric_columns(std::span<const int> ms, bool disentropy = true);

/// Adds every computed value of `report` to `row`, with failures as errors.
void record(Row& row, const metrics::MetricReport& report, const std::string& prefix = "");

metrics::AnalyzeOptions options(bool disentropy, bool entropies, bool pvalue = false);

/// Preset signal of length n plus the seed that produced it.
Signal preset_signal(const std::string& name, std::size_t n, std::vector<std::uint32_t>* seeds = nullptr);

double mean(std::span<const double> v);
/// Population sd (normalized by the count).
double population_sd(std::span<const double> v);
/// Sample sd normalized by count - 1; NaN for fewer than 2 values.
double sample_sd(std::span<const double> v);

/// Fills name and provenance (version, canonical spec, hash, seeds).
void finish(ExperimentResult& result, const ExperimentSpec& spec, std::vector<std::uint32_t> seeds);

void add_check(ExperimentResult& result, std::string name, bool passed, std::string detail);

/// Short decimal rendering for check details.
std::string num(double v);
std::string percent(double fraction);

/// Progress reporting helper shared by the runners.
class Progress {
 public:
  Progress(const RunOptions& opts, std::size_t total) : opts_(opts), total_(total) {}
  void tick();

 private:
  const RunOptions& opts_;
  std::size_t total_;
  std::size_t done_ = 0;
  std::mutex mutex_;
};

}  // namespace disentropy::experiments::detail
