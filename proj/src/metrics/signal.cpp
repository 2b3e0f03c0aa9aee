#include "disentropy/signal.hpp"

#include <cmath>
#include <string>

#include "disentropy/error.hpp"
#include "disentropy/metrics/compensated_sum.hpp"

namespace disentropy {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::zero_variance: return "zero_variance";
    case ErrorCode::domain_error: return "domain_error";
    case ErrorCode::degenerate_q: return "degenerate_q";
    case ErrorCode::singular_input: return "singular_input";
    case ErrorCode::singular_autocorrelation: return "singular_autocorrelation";
    case ErrorCode::too_short: return "too_short";
    case ErrorCode::no_matches: return "no_matches";
    case ErrorCode::not_binary: return "not_binary";
    case ErrorCode::embedding_too_large: return "embedding_too_large";
    case ErrorCode::file_parse_error: return "file_parse_error";
    case ErrorCode::insufficient_samples: return "insufficient_samples";
    case ErrorCode::level_out_of_range: return "level_out_of_range";
    case ErrorCode::config_error: return "config_error";
    case ErrorCode::empty_list: return "empty_list";
    case ErrorCode::mixed_domain: return "mixed_domain";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

std::string to_string(const Domain& domain) {
  switch (domain.kind) {
    case DomainKind::analog: return "analog";
    case DomainKind::binary: return "binary";
    case DomainKind::multilevel: return "multilevel:" + std::to_string(domain.levels);
  }
  return "analog";
}

Domain parse_domain(const std::string& text) {
  if (text == "analog") return Domain::analog();
  if (text == "binary") return Domain::binary();
  const std::string prefix = "multilevel:";
  if (text.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      const std::string tail = text.substr(prefix.size());
      const int levels = std::stoi(tail, &used);
      if (used == tail.size() && levels >= 2) return Domain::multilevel(levels);
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown domain '" + text +
                                               "' (expected analog, binary or multilevel:<levels>)");
}

void require_finite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::non_finite, "sample " + std::to_string(i) + " is not finite");
    }
  }
}

namespace {

void validate(std::span<const double> samples, const Domain& domain) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::insufficient_samples, "a signal needs at least 2 samples");
  }
  require_finite(samples);
  if (domain.kind == DomainKind::binary) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i] != 0.0 && samples[i] != 1.0) {
        throw Error(ErrorCode::not_binary,
                    "binary signal has non-{0,1} sample at index " + std::to_string(i));
      }
    }
  }
  if (domain.kind == DomainKind::multilevel && domain.levels < 2) {
    throw Error(ErrorCode::level_out_of_range, "multilevel domain needs at least 2 levels");
  }
}

}  // namespace

Signal::Signal(std::vector<double> samples, Domain domain, Metadata meta)
    : samples_(std::move(samples)), domain_(domain), meta_(std::move(meta)) {
  validate(samples_, domain_);
}

Signal Signal::with_domain(Domain domain) const { return Signal(samples_, domain, meta_); }

double sample_mean(std::span<const double> values) {
  metrics::CompensatedSum sum;
  for (double v : values) sum += v;
  return sum.value() / static_cast<double>(values.size());
}

double population_variance(std::span<const double> values) {
  const double mean = sample_mean(values);
  metrics::CompensatedSum sum;
  for (double v : values) sum += (v - mean) * (v - mean);
  return sum.value() / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
  const auto n = static_cast<double>(values.size());
  return std::sqrt(population_variance(values) * n / (n - 1.0));
}

}  // namespace disentropy
