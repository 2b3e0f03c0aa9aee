#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace disentropy::generators {

/// x_{k+1} = (a x_k + c) mod M.
struct LcgParams {
  std::uint64_t modulus = 2;
  std::uint64_t multiplier = 0;
  std::uint64_t increment = 0;
  std::uint64_t seed = 0;

  /// Throws config_error unless 2 <= M <= 2^32 and a, c, x0 < M.
  void validate() const;
  friend bool operator==(const LcgParams&, const LcgParams&) = default;
};

/// One step of the recursion. `state` must be < M; exact for M <= 2^32.
[[nodiscard]] constexpr std::uint64_t lcg_next(std::uint64_t state, const LcgParams& p) noexcept {
  return (p.multiplier * state + p.increment) % p.modulus;
}

/// Sequential generator. The first value returned is the seed itself.
class Lcg {
 public:
  explicit Lcg(const LcgParams& params);

  std::uint64_t next() noexcept {
    const std::uint64_t out = state_;
    state_ = lcg_next(state_, params_);
    return out;
  }
  [[nodiscard]] const LcgParams& params() const noexcept { return params_; }

 private:
  LcgParams params_;
  std::uint64_t state_;
};

struct LcgPreset {
  std::string_view name;   // CLI key
  std::string_view label;  // display name
  LcgParams params;
};

/// MSG, C++11-style, GNU-C-style, LCG Bad and LCG 1-4, all seeded with 1.
std::span<const LcgPreset> lcg_presets();
const LcgPreset* find_lcg_preset(std::string_view name);

}  // namespace disentropy::generators
