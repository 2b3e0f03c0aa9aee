#include "disentropy/metrics/tsallis.hpp"

#include <cmath>
#include <string>

#include "disentropy/error.hpp"

namespace disentropy::metrics {

double q_log(double x, double q) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::domain_error, "q_log requires a finite x > 0, got " + std::to_string(x));
  }
  if (q == 1.0) {
    throw Error(ErrorCode::degenerate_q, "q_log is undefined at q = 1; use the natural logarithm");
  }
  const double one_minus_q = 1.0 - q;
  return std::expm1(one_minus_q * std::log(x)) / one_minus_q;
}

double q_exp(double x, double q) {
  if (q == 1.0) {
    throw Error(ErrorCode::degenerate_q, "q_exp is undefined at q = 1; use the natural exponential");
  }
  const double one_minus_q = 1.0 - q;
  const double base = 1.0 + one_minus_q * x;
  if (base < 0.0 || (base == 0.0 && one_minus_q < 0.0)) {
    throw Error(ErrorCode::domain_error,
                "q_exp requires 1 + (1 - q) x > 0, got " + std::to_string(base));
  }
  if (base == 0.0) return 0.0;
  return std::exp(std::log1p(one_minus_q * x) / one_minus_q);
}

double w2(double z) {
  if (z == -1.0) {
    throw Error(ErrorCode::singular_input, "w2 diverges at z = -1 (perfect anti-correlation)");
  }
  if (z < -1.0 || !std::isfinite(z)) {
    throw Error(ErrorCode::domain_error, "w2 is defined for finite z > -1, got " + std::to_string(z));
  }
  return z / (z + 1.0);
}

}  // namespace disentropy::metrics
