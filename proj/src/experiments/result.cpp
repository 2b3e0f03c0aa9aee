#include "disentropy/experiments/result.hpp"

#include <algorithm>

#include "disentropy/error.hpp"

namespace disentropy::experiments {

Row& Row::label(std::string key, std::string value) {
  labels.emplace_back(std::move(key), std::move(value));
  return *this;
}

Row& Row::set(std::string key, double value) {
  for (auto& [k, v] : values) {
    if (k == key) {
      v = value;
      return *this;
    }
  }
  values.emplace_back(std::move(key), value);
  return *this;
}

Row& Row::error(std::string message) {
  errors.push_back(std::move(message));
  return *this;
}

std::optional<double> Row::get(std::string_view key) const {
  for (const auto& [k, v] : values) {
    if (k == key) return v;
  }
  return std::nullopt;
}

double Row::at(std::string_view key) const {
  if (auto v = get(key)) return *v;
  throw Error(ErrorCode::config_error, "row '" + id + "' has no column '" + std::string(key) + "'");
}

std::optional<std::string> Row::label_of(std::string_view key) const {
  for (const auto& [k, v] : labels) {
    if (k == key) return v;
  }
  return std::nullopt;
}

namespace {

const Row* find_in(const std::vector<Row>& rows, std::string_view id) {
  auto it = std::find_if(rows.begin(), rows.end(), [&](const Row& r) { return r.id == id; });
  return it == rows.end() ? nullptr : &*it;
}

}  // namespace

const Row* ExperimentResult::find_row(std::string_view id) const { return find_in(rows, id); }

const Row* ExperimentResult::find_summary(std::string_view id) const { return find_in(summary, id); }

const Check* ExperimentResult::find_check(std::string_view name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

std::size_t ExperimentResult::error_count() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.errors.size();
  for (const auto& r : summary) n += r.errors.size();
  return n;
}

}  // namespace disentropy::experiments
