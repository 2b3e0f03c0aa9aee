#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "disentropy/signal.hpp"

namespace disentropy::metrics {

/// Biased autocorrelation r_k = c_k / c_0 for every lag k = 0..N-1, where
/// c_k = (1/N) sum_t (s_t - mean)(s_{t+k} - mean).
struct AutocorrSeries {
  std::vector<double> values;

  [[nodiscard]] std::size_t n_samples() const noexcept { return values.size(); }
  [[nodiscard]] double operator[](std::size_t lag) const { return values[lag]; }
};

enum class AutocorrMethod { automatic, direct, fft };

/// Signals longer than this use the frequency-domain path under `automatic`.
inline constexpr std::size_t kFftAutocorrThreshold = 1024;

AutocorrSeries autocorrelation(std::span<const double> samples,
                               AutocorrMethod method = AutocorrMethod::automatic);
AutocorrSeries autocorrelation(const Signal& signal,
                               AutocorrMethod method = AutocorrMethod::automatic);

}  // namespace disentropy::metrics
