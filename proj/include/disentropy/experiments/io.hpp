#pragma once

#include <string>

#include "disentropy/experiments/result.hpp"

namespace disentropy::experiments {

inline constexpr int kResultSchema = 1;

/// JSON document with "schema": 1, rows, summary, checks and provenance.
std::string to_json(const ExperimentResult& result);
/// One line per row: id, labels, values, errors (RFC 4180 quoting).
std::string to_csv(const ExperimentResult& result);
/// Columns experiment,x,series,value.
std::string to_plot_csv(const ExperimentResult& result);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& text);
/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// Writes through a temporary sibling file and an atomic rename.
/// Throws io_error on failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace disentropy::experiments
