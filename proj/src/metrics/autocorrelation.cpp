#include "disentropy/metrics/autocorrelation.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

#include "disentropy/error.hpp"
#include "disentropy/metrics/compensated_sum.hpp"

namespace disentropy::metrics {
namespace {

// The FFTW planner keeps global state; execution of a finished plan is thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
  auto* raw = static_cast<T*>(fftw_malloc(sizeof(T) * count));
  if (raw == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(raw);
}

class Plan {
 public:
  explicit Plan(fftw_plan plan) : plan_(plan) {
    if (plan_ == nullptr) throw Error(ErrorCode::invalid_argument, "FFTW could not create a plan");
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

std::size_t fft_length(std::size_t n) {
  // Zero padding to >= 2N - 1 turns the circular correlation into a linear one.
  std::size_t len = 1;
  while (len < 2 * n) len <<= 1;
  return len;
}

std::vector<double> centered(std::span<const double> samples) {
  const double mean = sample_mean(samples);
  std::vector<double> d(samples.size());
  std::transform(samples.begin(), samples.end(), d.begin(), [mean](double v) { return v - mean; });
  return d;
}

std::vector<double> raw_covariances_direct(const std::vector<double>& d) {
  const std::size_t n = d.size();
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    CompensatedSum sum;
    for (std::size_t t = 0; t + k < n; ++t) sum += d[t] * d[t + k];
    c[k] = sum.value();
  }
  return c;
}

std::vector<double> raw_covariances_fft(const std::vector<double>& d) {
  const std::size_t n = d.size();
  const std::size_t len = fft_length(n);
  const std::size_t bins = len / 2 + 1;
  auto real = fftw_buffer<double>(len);
  auto spectrum = fftw_buffer<fftw_complex>(bins);

  std::unique_ptr<Plan> forward;
  std::unique_ptr<Plan> backward;
  {
    std::lock_guard lock(planner_mutex());
    const int ilen = static_cast<int>(len);
    forward = std::make_unique<Plan>(
        fftw_plan_dft_r2c_1d(ilen, real.get(), spectrum.get(), FFTW_ESTIMATE));
    backward = std::make_unique<Plan>(
        fftw_plan_dft_c2r_1d(ilen, spectrum.get(), real.get(), FFTW_ESTIMATE));
  }

  std::copy(d.begin(), d.end(), real.get());
  std::fill(real.get() + n, real.get() + len, 0.0);
  forward->execute();
  for (std::size_t b = 0; b < bins; ++b) {
    const double re = spectrum[b][0];
    const double im = spectrum[b][1];
    spectrum[b][0] = re * re + im * im;
    spectrum[b][1] = 0.0;
  }
  backward->execute();

  std::vector<double> c(n);
  const double scale = 1.0 / static_cast<double>(len);
  for (std::size_t k = 0; k < n; ++k) c[k] = real[k] * scale;
  return c;
}

}  // namespace

AutocorrSeries autocorrelation(std::span<const double> samples, AutocorrMethod method) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::insufficient_samples, "autocorrelation needs at least 2 samples");
  }
  require_finite(samples);
  if (std::all_of(samples.begin(), samples.end(), [&](double v) { return v == samples[0]; })) {
    throw Error(ErrorCode::zero_variance, "signal has zero variance (all samples equal)");
  }

  const std::vector<double> d = centered(samples);
  if (method == AutocorrMethod::automatic) {
    method = samples.size() > kFftAutocorrThreshold ? AutocorrMethod::fft : AutocorrMethod::direct;
  }

  // c_0 is always taken from the direct sum so that both paths share sigma_0^2.
  CompensatedSum c0_sum;
  for (double v : d) c0_sum += v * v;
  const double c0 = c0_sum.value();
  if (!(c0 > 0.0)) {
    throw Error(ErrorCode::zero_variance, "signal has zero variance");
  }

  std::vector<double> c =
      method == AutocorrMethod::fft ? raw_covariances_fft(d) : raw_covariances_direct(d);
  AutocorrSeries out;
  out.values.resize(c.size());
  out.values[0] = 1.0;
  for (std::size_t k = 1; k < c.size(); ++k) out.values[k] = c[k] / c0;
  return out;
}

AutocorrSeries autocorrelation(const Signal& signal, AutocorrMethod method) {
  return autocorrelation(signal.samples(), method);
}

}  // namespace disentropy::metrics
