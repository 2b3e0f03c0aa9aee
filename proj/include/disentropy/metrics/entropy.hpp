#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "disentropy/signal.hpp"

namespace disentropy::metrics {

enum class MembershipKind { gaussian, exponential, triangular, z_shaped, constant_gaussian };

/// Fuzzy membership grade f(d; r) in [0, 1] for a Chebyshev block distance d.
/// Every family is non-increasing in d, which the fast kernel relies on.
///
///   gaussian           exp(-d^2 / (2 r^2))
///   exponential        exp(-(d / r)^power)
///   triangular         max(0, 1 - d / r)
///   z_shaped           1 - 2 (d/r)^2 on [0, r/2], 2 (1 - d/r)^2 on (r/2, r], 0 beyond
///   constant_gaussian  1 on [0, r], exp(-(d - r)^2 / (2 r^2)) beyond
struct Membership {
  MembershipKind kind = MembershipKind::gaussian;
  double power = 2.0;

  [[nodiscard]] double operator()(double distance, double radius) const;
  /// Formula with constants, embedded in reports for comparability.
  [[nodiscard]] std::string describe() const;

  static Membership parse(const std::string& text);
};

/// How fuzzy similarities are folded into a score.
///   log_ratio       ln(phi_m / phi_{m+1}), phi = mean membership over distinct
///                   pairs, both dimensions using the same N - m templates
///   phi_difference  ApEn layout: phi_k = mean_i ln C_i^k with self-matches
enum class FuzzyStatistic { log_ratio, phi_difference };

inline constexpr double kApEnRFactor = 0.2;
inline constexpr double kFuzEnRFactor = 0.1253;

struct EntropyParams {
  int m = 2;
  /// Tolerance r = r_factor * sd, sd normalized by N - 1, recomputed per signal.
  double r_factor = kApEnRFactor;
  Membership membership{};
  /// Subtract each template's own mean before measuring distances.
  bool remove_baseline = false;
  FuzzyStatistic statistic = FuzzyStatistic::log_ratio;

  static EntropyParams apen_defaults(int m) { return {m, kApEnRFactor}; }
  static EntropyParams fuzen_defaults(int m) { return {m, kFuzEnRFactor}; }
};

/// Tolerance r derived from the signal; throws zero_variance for constant input.
double tolerance(std::span<const double> samples, double r_factor);

/// Template match counts used by ApEn: counts[k - 1][i] is the number of j
/// (including j == i) whose length-k template lies within `radius` of
/// template i under the Chebyshev distance, for i < N - k + 1.
struct MatchCounts {
  int max_length = 0;
  std::vector<std::vector<std::uint32_t>> counts;
};

MatchCounts template_match_counts(std::span<const double> samples, double radius, int max_length);

/// Pincus approximate entropy phi^m(r) - phi^{m+1}(r), self-matches included.
double apen(std::span<const double> samples, const EntropyParams& params);
double apen(const Signal& signal, const EntropyParams& params);

/// ApEn for every m in `ms` from a single O(N^2) pass.
std::map<int, double> apen_profile(std::span<const double> samples, std::span<const int> ms,
                                   double r_factor = kApEnRFactor);

/// Fuzzy entropy with the Heaviside match replaced by `params.membership`.
double fuzen(std::span<const double> samples, const EntropyParams& params);
double fuzen(const Signal& signal, const EntropyParams& params);

/// FuzEn for every m in `ms` from a single pass; `params.m` is ignored.
std::map<int, double> fuzen_profile(std::span<const double> samples, std::span<const int> ms,
                                    const EntropyParams& params);

}  // namespace disentropy::metrics
