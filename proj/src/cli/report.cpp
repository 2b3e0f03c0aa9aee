#include "disentropy/cli/report.hpp"

#include <cmath>
#include <json.hpp>

#include "disentropy/experiments/io.hpp"
#include "disentropy/hash.hpp"

#ifndef DISENTROPY_VERSION
#define DISENTROPY_VERSION "unknown"
#endif

namespace disentropy::cli {

using json = nlohmann::ordered_json;

namespace {

json entropy_params(const metrics::EntropyParams& p) {
  return {{"r_factor", p.r_factor},
          {"membership", p.membership.describe()},
          {"remove_baseline", p.remove_baseline},
          {"statistic", p.statistic == metrics::FuzzyStatistic::log_ratio ? "log_ratio" : "phi_difference"}};
}

json parameters(const metrics::MetricReport& r) {
  json apen = {{"r_factor", r.options.apen.r_factor}, {"self_matches", true}};
  return {{"m_list", r.m_list},
          {"disentropy", r.options.disentropy},
          {"apen", r.options.approximate_entropy ? apen : json(nullptr)},
          {"fuzen", r.options.fuzzy_entropy ? entropy_params(r.options.fuzen) : json(nullptr)},
          {"apen_pvalue", r.options.pvalue}};
}

json by_m(const std::map<int, double>& values) {
  json out = json::object();
  for (const auto& [m, v] : values) out[std::to_string(m)] = std::isfinite(v) ? json(v) : json(nullptr);
  return out;
}

}  // namespace

std::string analysis_parameters_json(const metrics::MetricReport& report) { return parameters(report).dump(); }

std::string metric_report_json(const metrics::MetricReport& r, const std::vector<std::string>& warnings) {
  json doc;
  doc["schema"] = kReportSchema;
  doc["kind"] = "metric_report";
  doc["tool_version"] = DISENTROPY_VERSION;
  const std::string params = analysis_parameters_json(r);
  doc["spec_hash"] = "fnv1a64:" + fnv1a64_hex(params);
  json seeds = json::array();
  if (auto it = r.signal_meta.find("seed"); it != r.signal_meta.end()) seeds.push_back(it->second);
  doc["seeds"] = seeds;
  doc["parameters"] = json::parse(params);
  doc["n_samples"] = r.n_samples;
  doc["domain"] = to_string(r.domain);
  json signal = json::object();
  for (const auto& [k, v] : r.signal_meta) signal[k] = v;
  doc["signal"] = signal;
  json scores = json::object();
  if (r.disentropy_score) scores["disentropy"] = {{"d2", *r.disentropy_d2}, {"score", *r.disentropy_score}};
  else scores["disentropy"] = nullptr;
  scores["apen"] = by_m(r.apen);
  scores["fuzen"] = by_m(r.fuzen);
  scores["apen_pvalue"] = by_m(r.apen_pvalue);
  doc["scores"] = scores;
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"metric", f.metric},
                        {"m", f.m ? json(*f.m) : json(nullptr)},
                        {"error", std::string(to_string(f.code))},
                        {"message", f.message}});
  }
  doc["failures"] = failures;
  doc["warnings"] = warnings;
  return doc.dump(2) + "\n";
}

std::string metric_report_csv(const metrics::MetricReport& r) {
  using experiments::csv_field;
  using experiments::format_double;
  std::string out = "metric,m,value,status,message\r\n";
  auto ok = [&](const std::string& metric, const std::string& m, double v) {
    out += metric + "," + m + "," + format_double(v) + ",ok,\r\n";
  };
  if (r.disentropy_score) {
    ok("disentropy", "", *r.disentropy_score);
    ok("d2", "", *r.disentropy_d2);
  }
  for (const auto& [m, v] : r.apen) ok("apen", std::to_string(m), v);
  for (const auto& [m, v] : r.fuzen) ok("fuzen", std::to_string(m), v);
  for (const auto& [m, v] : r.apen_pvalue) ok("apen_pvalue", std::to_string(m), v);
  for (const auto& f : r.failures) {
    out += f.metric + "," + (f.m ? std::to_string(*f.m) : "") + ",," + std::string(to_string(f.code)) + "," +
           csv_field(f.message) + "\r\n";
  }
  return out;
}

}  // namespace disentropy::cli
