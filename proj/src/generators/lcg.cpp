#include "disentropy/generators/lcg.hpp"

#include <array>
#include <string>

#include "disentropy/error.hpp"

namespace disentropy::generators {

void LcgParams::validate() const {
  if (modulus < 2 || modulus > (std::uint64_t{1} << 32)) {
    throw Error(ErrorCode::config_error, "LCG modulus must lie in [2, 2^32], got " + std::to_string(modulus));
  }
  if (multiplier >= modulus || increment >= modulus || seed >= modulus) {
    throw Error(ErrorCode::config_error, "LCG multiplier, increment and seed must be smaller than the modulus");
  }
}

Lcg::Lcg(const LcgParams& params) : params_(params), state_(params.seed) { params_.validate(); }

namespace {

constexpr std::uint64_t kMersenne31 = (std::uint64_t{1} << 31) - 1;

constexpr std::array<LcgPreset, 8> kPresets{{
    {"msg", "MSG", {kMersenne31, 16807, 0, 1}},
    {"cpp11", "C++11", {kMersenne31, 48271, 0, 1}},
    {"gnu", "GNU C", {std::uint64_t{1} << 31, 1103515245, 12345, 1}},
    {"lcg-bad", "LCG Bad", {5000, 17, 256, 1}},
    {"lcg1", "LCG 1", {std::uint64_t{1} << 20, 1487, 25436, 1}},
    {"lcg2", "LCG 2", {std::uint64_t{1} << 20, 1487, 25236, 1}},
    {"lcg3", "LCG 3", {std::uint64_t{1} << 20, 1487, 25336, 1}},
    {"lcg4", "LCG 4", {std::uint64_t{1} << 19, 1487, 25336, 1}},
}};

}  // namespace

std::span<const LcgPreset> lcg_presets() { return kPresets; }

const LcgPreset* find_lcg_preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace disentropy::generators
