#include <cmath>

#include "common.hpp"
#include "disentropy/error.hpp"
#include "disentropy/experiments/parallel.hpp"

namespace disentropy::experiments {

using detail::add_check;
using detail::num;

ExperimentResult run_trng_compare(const TrngSpec& spec, const RunOptions& opts) {
  if (spec.files.empty()) throw Error(ErrorCode::config_error, "trng comparison needs at least one file");
  if (spec.m_list.empty()) throw Error(ErrorCode::config_error, "m_list must not be empty");
  ExperimentResult result;
  std::vector<std::uint32_t> seeds;
  const auto opt = detail::options(true, true);
  detail::Progress progress(opts, spec.files.size() + 1);
  const std::size_t cells = spec.files.size() + 1;
  auto rows = parallel_map(cells, opts.threads, [&](std::size_t i) {
    Row row;
    try {
      if (i == spec.files.size()) {
        row.id = "reference " + spec.reference;
        row.label("preset", spec.reference);
        detail::record(row, metrics::analyze(detail::preset_signal(spec.reference, 10000), spec.m_list, opt));
      } else {
        row.id = spec.files[i];
        row.label("path", spec.files[i]);
        const Signal s = generators::ingest_trng_file(spec.files[i]);
        row.label("file_hash", s.meta().at("file_hash")).set("count", static_cast<double>(s.size()));
        if (s.size() < spec.min_values) {
          throw Error(ErrorCode::insufficient_samples, spec.files[i] + " holds " + std::to_string(s.size()) +
                                                           " values; at least " + std::to_string(spec.min_values) +
                                                           " are required");
        }
        detail::record(row, metrics::analyze(s, spec.m_list, opt));
      }
    } catch (const Error& e) {
      row.error(std::string(to_string(e.code())) + ": " + e.what());
    }
    progress.tick();
    return row;
  });
  detail::preset_signal(spec.reference, 2, &seeds);
  const Row reference = rows.back();
  rows.pop_back();
  result.rows = std::move(rows);

  std::size_t usable = 0;
  for (const auto& r : result.rows) usable += r.errors.empty() ? 1 : 0;
  if (spec.files.size() < 2) result.warnings.push_back("a single file: the sd across files is undefined");

  for (const auto& col : detail::metric_columns(spec.m_list)) {
    std::vector<double> vals;
    for (const auto& r : result.rows) {
      if (auto v = r.get(col)) vals.push_back(*v);
    }
    Row row;
    row.id = "mean " + col;
    row.label("metric", col);
    if (vals.empty()) {
      row.error("no file produced " + col);
      result.summary.push_back(std::move(row));
      continue;
    }
    const double mu = detail::mean(vals);
    const double sd = detail::sample_sd(vals);
    row.set("mean", mu).set("sd", sd).set("files", static_cast<double>(vals.size()));
    if (std::isnan(sd)) row.label("sd", "undefined (single file)");
    for (std::size_t i = 0; i < vals.size(); ++i) result.plot.push_back({col, static_cast<double>(i), vals[i]});
    auto ref = reference.get(col);
    if (ref) row.set("reference", *ref);
    if (col == detail::kDisentropyCol) {
      add_check(result, "mean disentropy within [" + num(spec.disentropy_low) + ", " + num(spec.disentropy_high) + "]",
                mu >= spec.disentropy_low && mu <= spec.disentropy_high, "mean " + num(mu));
    } else if (ref) {
      add_check(result, "mean " + col + " matches " + spec.reference + " within " + num(spec.entropy_tolerance),
                std::abs(mu - *ref) <= spec.entropy_tolerance, num(mu) + " vs " + num(*ref));
    }
    result.summary.push_back(std::move(row));
  }
  for (const auto& e : reference.errors) result.warnings.push_back("reference: " + e);
  if (usable == 0) result.warnings.push_back("no file could be scored");
  detail::finish(result, spec, seeds);
  return result;
}

}  // namespace disentropy::experiments
