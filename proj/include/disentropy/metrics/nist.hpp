#pragma once

#include <span>

#include "disentropy/signal.hpp"

namespace disentropy::metrics {

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Series expansion for x < a + 1, Lentz continued fraction otherwise;
/// relative accuracy about 1e-14 for the argument ranges used here.
double igamc(double a, double x);

/// Largest embedding dimension accepted for a binary series of length n:
/// floor(log2 n) - 5. Returns a value < 1 when no dimension is admissible.
int nist_max_embedding(std::size_t n);

/// ApEn statistic of the NIST SP 800-22 test: overlapping blocks with wrap-around,
/// phi^m = sum over patterns of pi log pi.
double nist_apen_statistic(std::span<const double> bits, int m);

/// p-value of the NIST approximate entropy test,
/// chi^2 = 2N (ln 2 - ApEn), p = igamc(2^(m-1), chi^2 / 2).
/// Throws not_binary for non-binary signals and embedding_too_large when
/// m exceeds nist_max_embedding(N).
double apen_nist_pvalue(const Signal& signal, int m);

inline constexpr double kNistSignificance = 0.01;

}  // namespace disentropy::metrics
