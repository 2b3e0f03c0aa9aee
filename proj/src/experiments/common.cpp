#include "common.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "disentropy/hash.hpp"
#include "disentropy/metrics/compensated_sum.hpp"

#ifndef DISENTROPY_VERSION
#define DISENTROPY_VERSION "unknown"
#endif

namespace disentropy::experiments::detail {

std::string apen_col(int m) { return "apen_m" + std::to_string(m); }
std::string fuzen_col(int m) { return "fuzen_m" + std::to_string(m); }
std::string pvalue_col(int m) { return "pvalue_m" + std::to_string(m); }

std::vector<std::string> metric_columns(std::span<const int> ms, bool disentropy) {
  std::vector<std::string> cols;
  if (disentropy) cols.emplace_back(kDisentropyCol);
  for (int m : ms) cols.push_back(apen_col(m));
  for (int m : ms) cols.push_back(fuzen_col(m));
  return cols;
}

void record(Row& row, const metrics::MetricReport& report, const std::string& prefix) {
  if (report.disentropy_score) {
    row.set(prefix + kDisentropyCol, *report.disentropy_score);
    row.set(prefix + "d2", *report.disentropy_d2);
  }
  for (const auto& [m, v] : report.apen) row.set(prefix + apen_col(m), v);
  for (const auto& [m, v] : report.fuzen) row.set(prefix + fuzen_col(m), v);
  for (const auto& [m, v] : report.apen_pvalue) row.set(prefix + pvalue_col(m), v);
  for (const auto& f : report.failures) {
    std::string where = prefix + f.metric;
    if (f.m) where += "[m=" + std::to_string(*f.m) + "]";
    row.error(where + ": " + std::string(to_string(f.code)) + ": " + f.message);
  }
}

metrics::AnalyzeOptions options(bool disentropy, bool entropies, bool pvalue) {
  metrics::AnalyzeOptions o;
  o.disentropy = disentropy;
  o.approximate_entropy = entropies;
  o.fuzzy_entropy = entropies;
  o.pvalue = pvalue;
  return o;
}

Signal preset_signal(const std::string& name, std::size_t n, std::vector<std::uint32_t>* seeds) {
  const generators::GeneratorSpec gen = generators::preset(name, n);
  if (seeds != nullptr) {
    if (const auto* mt = std::get_if<generators::MtSeedSource>(&gen.source)) {
      seeds->push_back(mt->seed);
    } else if (const auto* lcg = std::get_if<generators::LcgSource>(&gen.source)) {
      seeds->push_back(static_cast<std::uint32_t>(lcg->params.seed));
    }
  }
  return generators::generate(gen);
}

double mean(std::span<const double> v) {
  if (v.empty()) return std::nan("");
  metrics::CompensatedSum s;
  for (double x : v) s += x;
  return s.value() / static_cast<double>(v.size());
}

namespace {

double squared_deviations(std::span<const double> v) {
  const double mu = mean(v);
  metrics::CompensatedSum s;
  for (double x : v) s += (x - mu) * (x - mu);
  return s.value();
}

}  // namespace

double population_sd(std::span<const double> v) {
  if (v.empty()) return std::nan("");
  return std::sqrt(squared_deviations(v) / static_cast<double>(v.size()));
}

double sample_sd(std::span<const double> v) {
  if (v.size() < 2) return std::nan("");
  return std::sqrt(squared_deviations(v) / static_cast<double>(v.size() - 1));
}

void finish(ExperimentResult& result, const ExperimentSpec& spec, std::vector<std::uint32_t> seeds) {
  result.experiment = experiment_name(spec);
  result.provenance.tool_version = DISENTROPY_VERSION;
  result.provenance.spec_json = canonical_json(spec);
  result.provenance.spec_hash = "fnv1a64:" + fnv1a64_hex(result.provenance.spec_json);
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  result.provenance.seeds = std::move(seeds);
}

void add_check(ExperimentResult& result, std::string name, bool passed, std::string detail) {
  result.checks.push_back({std::move(name), passed, std::move(detail)});
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.2f%%", 100.0 * fraction);
  return buf;
}

void Progress::tick() {
  if (!opts_.progress) return;
  std::lock_guard lock(mutex_);
  opts_.progress(++done_, total_);
}

}  // namespace disentropy::experiments::detail
