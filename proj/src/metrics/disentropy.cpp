#include "disentropy/metrics/disentropy.hpp"

#include <cmath>
#include <string>

#include "disentropy/error.hpp"
#include "disentropy/metrics/compensated_sum.hpp"

namespace disentropy::metrics {

double disentropy(const AutocorrSeries& acf) {
  CompensatedSum sum;
  for (std::size_t k = 0; k < acf.values.size(); ++k) {
    const double r = acf.values[k];
    if (!std::isfinite(r)) {
      throw Error(ErrorCode::non_finite, "autocorrelation lag " + std::to_string(k) + " is not finite");
    }
    if (r <= -1.0 + kSingularityGuard) {
      throw Error(ErrorCode::singular_autocorrelation,
                  "disentropy diverges: r_" + std::to_string(k) + " = " + std::to_string(r) +
                      " is at perfect anti-correlation");
    }
    sum += r * r * r / (r + 1.0);
  }
  return sum.value();
}

DisentropyScore disentropy_of(std::span<const double> samples) {
  const double d2 = disentropy(autocorrelation(samples));
  return {d2, std::abs(d2 - kIdealDisentropy)};
}

DisentropyScore disentropy_of(const Signal& signal) { return disentropy_of(signal.samples()); }

double disentropy_score(const Signal& signal) { return disentropy_of(signal).score; }

}  // namespace disentropy::metrics
