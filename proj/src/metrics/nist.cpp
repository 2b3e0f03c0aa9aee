#include "disentropy/metrics/nist.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "disentropy/error.hpp"

namespace disentropy::metrics {
namespace {

constexpr int kMaxIterations = 100000;
constexpr double kEpsilon = 1e-16;

// Lower regularized gamma P(a, x) by its power series.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEpsilon) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the modified Lentz evaluation of the Legendre continued fraction.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEpsilon;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEpsilon) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double igamc(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::domain_error, "igamc requires a > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

int nist_max_embedding(std::size_t n) {
  if (n < 2) return 0;
  return static_cast<int>(std::bit_width(n)) - 1 - 5;
}

double nist_apen_statistic(std::span<const double> bits, int m) {
  const std::size_t n = bits.size();
  auto phi = [&](int len) {
    if (len == 0) return 0.0;
    const std::size_t patterns = std::size_t{1} << len;
    const std::size_t mask = patterns - 1;
    std::vector<std::size_t> counts(patterns, 0);
    std::size_t word = 0;
    for (int t = 0; t < len - 1; ++t) word = (word << 1) | (bits[static_cast<std::size_t>(t) % n] != 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      word = ((word << 1) | (bits[(i + static_cast<std::size_t>(len) - 1) % n] != 0.0)) & mask;
      ++counts[word];
    }
    double sum = 0.0;
    for (std::size_t c : counts) {
      if (c == 0) continue;
      const double p = static_cast<double>(c) / static_cast<double>(n);
      sum += p * std::log(p);
    }
    return sum;
  };
  return phi(m) - phi(m + 1);
}

double apen_nist_pvalue(const Signal& signal, int m) {
  if (signal.domain().kind != DomainKind::binary) {
    throw Error(ErrorCode::not_binary, "the NIST approximate entropy test needs a binary signal (domain is " +
                                           to_string(signal.domain()) + ")");
  }
  const int bound = nist_max_embedding(signal.size());
  if (m < 1 || m > bound) {
    throw Error(ErrorCode::embedding_too_large,
                "m = " + std::to_string(m) + " is outside the NIST bound 1 <= m <= floor(log2 N) - 5 = " +
                    std::to_string(bound) + " for N = " + std::to_string(signal.size()));
  }
  const double ap = nist_apen_statistic(signal.samples(), m);
  const auto n = static_cast<double>(signal.size());
  const double chi2 = std::max(0.0, 2.0 * n * (std::log(2.0) - ap));
  const double p = igamc(std::ldexp(1.0, m - 1), chi2 / 2.0);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace disentropy::metrics
