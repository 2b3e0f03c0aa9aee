#pragma once

#include <cstdint>
#include <random>

namespace disentropy::generators {

/// Seed 0 is mapped to the reference default key 5489 so that "seed 0"
/// reproduces the conventional default stream; other seeds pass through.
[[nodiscard]] constexpr std::uint32_t mt_engine_key(std::uint32_t seed) noexcept {
  return seed == 0 ? 5489U : seed;
}

/// MT19937 with the 53-bit two-word double construction
/// ((a >> 5) * 2^26 + (b >> 6)) / 2^53, in [0, 1).
class MtSource {
 public:
  explicit MtSource(std::uint32_t seed) : engine_(mt_engine_key(seed)) {}

  std::uint32_t next_u32() { return static_cast<std::uint32_t>(engine_()); }

  double next_double() {
    const std::uint32_t a = next_u32() >> 5;
    const std::uint32_t b = next_u32() >> 6;
    return (a * 67108864.0 + b) * (1.0 / 9007199254740992.0);
  }

  /// Standard normal deviate by the Box-Muller transform; the sine branch
  /// is kept for the following call.
  double next_gaussian();

 private:
  std::mt19937 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace disentropy::generators
