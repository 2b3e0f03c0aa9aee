#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace disentropy {

enum class DomainKind { analog, binary, multilevel };

struct Domain {
  DomainKind kind = DomainKind::analog;
  int levels = 0;  // meaningful only for multilevel

  static Domain analog() { return {DomainKind::analog, 0}; }
  static Domain binary() { return {DomainKind::binary, 2}; }
  static Domain multilevel(int levels) { return {DomainKind::multilevel, levels}; }

  friend bool operator==(const Domain&, const Domain&) = default;
};

std::string to_string(const Domain& domain);
Domain parse_domain(const std::string& text);

/// Ordered so that serialized provenance is stable run to run.
using Metadata = std::map<std::string, std::string>;

/// Ordered real-valued sample sequence. Construction enforces N >= 2, finite
/// samples, and {0,1} values for the binary domain.
class Signal {
 public:
  explicit Signal(std::vector<double> samples, Domain domain = Domain::analog(), Metadata meta = {});

  [[nodiscard]] std::span<const double> samples() const noexcept { return samples_; }
  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return samples_[i]; }
  [[nodiscard]] const Domain& domain() const noexcept { return domain_; }
  [[nodiscard]] const Metadata& meta() const noexcept { return meta_; }

  Metadata& meta() noexcept { return meta_; }

  /// Copy with identical samples and a different domain tag (validated).
  [[nodiscard]] Signal with_domain(Domain domain) const;

  /// Releases the samples; the signal is left empty and must not be used.
  std::vector<double> take_samples() && { return std::move(samples_); }

 private:
  std::vector<double> samples_;
  Domain domain_;
  Metadata meta_;
};

/// Throws non_finite if any value is NaN or infinite.
void require_finite(std::span<const double> values);

double sample_mean(std::span<const double> values);
/// Variance normalized by N (sigma_0^2 of the autocorrelation estimator).
double population_variance(std::span<const double> values);
/// Standard deviation normalized by N - 1, used for entropy tolerances.
double sample_stddev(std::span<const double> values);

}  // namespace disentropy
