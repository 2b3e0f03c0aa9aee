#include "disentropy/experiments/io.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "disentropy/error.hpp"

namespace disentropy::experiments {

using json = nlohmann::ordered_json;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json row_json(const Row& row) {
  json labels = json::object();
  for (const auto& [k, v] : row.labels) labels[k] = v;
  json values = json::object();
  for (const auto& [k, v] : row.values) values[k] = number(v);
  return {{"id", row.id}, {"labels", labels}, {"values", values}, {"errors", row.errors}};
}

template <typename Pairs>
void collect_keys(std::vector<std::string>& keys, const Pairs& pairs) {
  for (const auto& [k, v] : pairs) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  }
}

std::string join_errors(const std::vector<std::string>& errors) {
  std::string out;
  for (const auto& e : errors) {
    if (!out.empty()) out += "; ";
    out += e;
  }
  return out;
}

}  // namespace

std::string to_json(const ExperimentResult& result) {
  json doc;
  doc["schema"] = kResultSchema;
  doc["experiment"] = result.experiment;
  doc["tool_version"] = result.provenance.tool_version;
  doc["spec_hash"] = result.provenance.spec_hash;
  doc["spec"] = result.provenance.spec_json.empty() ? json::object() : json::parse(result.provenance.spec_json);
  doc["seeds"] = result.provenance.seeds;
  doc["rows"] = json::array();
  for (const auto& r : result.rows) doc["rows"].push_back(row_json(r));
  doc["summary"] = json::array();
  for (const auto& r : result.summary) doc["summary"].push_back(row_json(r));
  doc["checks"] = json::array();
  for (const auto& c : result.checks) {
    doc["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  doc["warnings"] = result.warnings;
  return doc.dump(2) + "\n";
}

std::string to_csv(const ExperimentResult& result) {
  std::vector<std::string> label_keys;
  std::vector<std::string> value_keys;
  for (const auto* rows : {&result.rows, &result.summary}) {
    for (const auto& r : *rows) {
      collect_keys(label_keys, r.labels);
      collect_keys(value_keys, r.values);
    }
  }
  std::string out = "section,id";
  for (const auto& k : label_keys) out += "," + csv_field(k);
  for (const auto& k : value_keys) out += "," + csv_field(k);
  out += ",errors\r\n";
  auto emit = [&](const char* section, const Row& r) {
    out += section;
    out += "," + csv_field(r.id);
    for (const auto& k : label_keys) out += "," + csv_field(r.label_of(k).value_or(""));
    for (const auto& k : value_keys) {
      auto v = r.get(k);
      out += ",";
      if (v) out += format_double(*v);
    }
    out += "," + csv_field(join_errors(r.errors)) + "\r\n";
  };
  for (const auto& r : result.rows) emit("row", r);
  for (const auto& r : result.summary) emit("summary", r);
  return out;
}

std::string to_plot_csv(const ExperimentResult& result) {
  std::string out = "experiment,x,series,value\r\n";
  for (const auto& p : result.plot) {
    out += csv_field(result.experiment) + "," + format_double(p.x) + "," + csv_field(p.series) + "," +
           format_double(p.value) + "\r\n";
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignore;
      fs::remove(tmp, ignore);
      throw Error(ErrorCode::io_error, "write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw Error(ErrorCode::io_error, "cannot rename into '" + path + "': " + ec.message());
  }
}

}  // namespace disentropy::experiments
