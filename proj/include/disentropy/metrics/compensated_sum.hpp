#pragma once

#include <cmath>

namespace disentropy::metrics {

/// Neumaier variant of Kahan summation. Sums of ~10^4 near-cancelling terms
/// (autocorrelation lags, disentropy contributions) keep full precision.
class CompensatedSum {
 public:
  void add(double value) noexcept {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) noexcept {
    add(value);
    return *this;
  }

  [[nodiscard]] double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace disentropy::metrics
