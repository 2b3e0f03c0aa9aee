#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace disentropy::experiments {

/// One table row: identifying labels, numeric values and per-cell errors.
/// Columns keep insertion order so that outputs are stable.
struct Row {
  std::string id;
  std::vector<std::pair<std::string, std::string>> labels;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::string> errors;

  Row& label(std::string key, std::string value);
  Row& set(std::string key, double value);
  Row& error(std::string message);

  [[nodiscard]] std::optional<double> get(std::string_view key) const;
  /// Throws config_error when the column is missing.
  [[nodiscard]] double at(std::string_view key) const;
  [[nodiscard]] std::optional<std::string> label_of(std::string_view key) const;
};

/// Qualitative claim evaluated from the produced table.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Long-format plot point: (series, x) -> value.
struct PlotPoint {
  std::string series;
  double x = 0.0;
  double value = 0.0;
};

struct Provenance {
  std::string tool_version;
  std::string spec_json;  // canonical JSON of the parameters
  std::string spec_hash;  // FNV-1a 64 of spec_json
  std::vector<std::uint32_t> seeds;
};

struct ExperimentResult {
  std::string experiment;
  std::vector<Row> rows;
  std::vector<Row> summary;
  std::vector<Check> checks;
  std::vector<PlotPoint> plot;
  std::vector<std::string> warnings;
  Provenance provenance;

  [[nodiscard]] const Row* find_row(std::string_view id) const;
  [[nodiscard]] const Row* find_summary(std::string_view id) const;
  [[nodiscard]] const Check* find_check(std::string_view name) const;
  /// Errors recorded in rows and summary rows.
  [[nodiscard]] std::size_t error_count() const;
};

}  // namespace disentropy::experiments
