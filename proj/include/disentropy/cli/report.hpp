#pragma once

#include <string>
#include <vector>

#include "disentropy/metrics/analyze.hpp"

namespace disentropy::cli {

inline constexpr int kReportSchema = 1;

/// JSON metric report (schema 1): every score, the parameters that produced
/// it, per-metric failures, warnings and provenance.
std::string metric_report_json(const metrics::MetricReport& report, const std::vector<std::string>& warnings);

/// CSV with columns metric,m,value,status,message.
std::string metric_report_csv(const metrics::MetricReport& report);

/// Canonical JSON of the analysis parameters, hashed into the report.
std::string analysis_parameters_json(const metrics::MetricReport& report);

}  // namespace disentropy::cli
