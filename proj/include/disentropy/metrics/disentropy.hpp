#pragma once

#include "disentropy/metrics/autocorrelation.hpp"
#include "disentropy/signal.hpp"

namespace disentropy::metrics {

/// Lags with r_k <= -1 + kSingularityGuard are rejected instead of diverging.
inline constexpr double kSingularityGuard = 1e-9;

/// The value of D_2 for a delta-like autocorrelation (r_0 = 1, r_k = 0 otherwise).
inline constexpr double kIdealDisentropy = 0.5;

/// D_2 = sum_k r_k^3 / (r_k + 1) = sum_k r_k^2 W_2(r_k) over every lag.
/// Throws singular_autocorrelation naming the first offending lag.
double disentropy(const AutocorrSeries& acf);

struct DisentropyScore {
  double d2 = 0.0;
  double score = 0.0;  // |D_2 - 0.5|
};

DisentropyScore disentropy_of(const Signal& signal);
DisentropyScore disentropy_of(std::span<const double> samples);

/// |D_2 - 0.5| of the signal's full-lag autocorrelation.
double disentropy_score(const Signal& signal);

}  // namespace disentropy::metrics
