#include "disentropy/generators/transforms.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "disentropy/error.hpp"
#include "disentropy/generators/mt.hpp"

namespace disentropy::generators {

Signal binarize(const Signal& signal, double threshold) {
  std::vector<double> out(signal.size());
  const auto in = signal.samples();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = in[i] >= threshold ? 1.0 : 0.0;
  Metadata meta = signal.meta();
  std::ostringstream th;
  th << threshold;
  meta["binarize_threshold"] = th.str();
  return Signal(std::move(out), Domain::binary(), std::move(meta));
}

Signal quantize_levels(const Signal& signal, int levels, double noise_sigma, std::uint32_t noise_seed) {
  if (levels < kMinLevels || levels > kMaxLevels) {
    throw Error(ErrorCode::level_out_of_range,
                "number of levels must lie in [2, 10], got " + std::to_string(levels));
  }
  if (!(noise_sigma >= 0.0 && noise_sigma <= kMaxLevelNoise)) {
    throw Error(ErrorCode::invalid_argument, "level noise sigma must lie in [0, 0.1]");
  }
  const double steps = levels - 1;
  MtSource noise(noise_seed);
  std::vector<double> out(signal.size());
  const auto in = signal.samples();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (in[i] < 0.0 || in[i] > 1.0) {
      throw Error(ErrorCode::domain_error, "quantization expects samples in [0, 1]; sample " +
                                               std::to_string(i) + " is " + std::to_string(in[i]));
    }
    const double level = std::floor(in[i] * steps + 0.5);
    out[i] = level / steps;
    if (noise_sigma > 0.0) out[i] += noise_sigma * noise.next_gaussian();
  }
  Metadata meta = signal.meta();
  meta["levels"] = std::to_string(levels);
  std::ostringstream sigma;
  sigma << noise_sigma;
  meta["level_noise_sigma"] = sigma.str();
  meta["level_noise_seed"] = std::to_string(noise_seed);
  return Signal(std::move(out), Domain::multilevel(levels), std::move(meta));
}

void LineInjection::validate(std::size_t n) const {
  if (period < 1) throw Error(ErrorCode::invalid_argument, "line period must be >= 1");
  if (start >= n) throw Error(ErrorCode::invalid_argument, "line start index lies beyond the signal");
  if (!(start_value >= 0.0 && start_value <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "line start value must lie in [0, 1]");
  }
  if (slope && !std::isfinite(*slope)) throw Error(ErrorCode::invalid_argument, "line slope must be finite");
}

std::vector<std::size_t> line_positions(std::size_t n, const LineInjection& inj) {
  inj.validate(n);
  std::vector<std::size_t> idx;
  idx.reserve((n - inj.start) / inj.period + 1);
  for (std::size_t i = inj.start; i < n; i += inj.period) idx.push_back(i);
  return idx;
}

double line_value(const LineInjection& inj, std::size_t j, std::size_t count) {
  const double slope =
      inj.slope ? *inj.slope : (count > 1 ? (1.0 - inj.start_value) / static_cast<double>(count - 1) : 0.0);
  double v = inj.start_value + slope * static_cast<double>(j);
  if (v > 1.0 || v < 0.0) v -= std::floor(v);
  return v;
}

Signal inject_line(const Signal& signal, const LineInjection& inj) {
  const auto idx = line_positions(signal.size(), inj);
  std::vector<double> out(signal.samples().begin(), signal.samples().end());
  for (std::size_t j = 0; j < idx.size(); ++j) out[idx[j]] = line_value(inj, j, idx.size());
  Metadata meta = signal.meta();
  meta["line_period"] = std::to_string(inj.period);
  meta["line_start"] = std::to_string(inj.start);
  return Signal(std::move(out), Domain::analog(), std::move(meta));
}

Signal inject_noise(const Signal& signal, const LineInjection& inj, std::uint32_t seed) {
  const auto idx = line_positions(signal.size(), inj);
  MtSource mt(seed);
  std::vector<double> out(signal.samples().begin(), signal.samples().end());
  for (std::size_t i : idx) out[i] = mt.next_double();
  Metadata meta = signal.meta();
  meta["sham_period"] = std::to_string(inj.period);
  meta["sham_seed"] = std::to_string(seed);
  return Signal(std::move(out), Domain::analog(), std::move(meta));
}

}  // namespace disentropy::generators
