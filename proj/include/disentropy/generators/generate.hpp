#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "disentropy/generators/lcg.hpp"
#include "disentropy/generators/transforms.hpp"
#include "disentropy/signal.hpp"

namespace disentropy::generators {

enum class Normalization { by_modulus, minmax, none };

std::string_view to_string(Normalization n) noexcept;
Normalization parse_normalization(std::string_view text);

enum class FileFormat { automatic, lines, csv };

struct LcgSource {
  LcgParams params;
};
struct MtSeedSource {
  std::uint32_t seed = 0;
};
struct FileSource {
  std::string path;
  FileFormat format = FileFormat::automatic;
};
using Source = std::variant<LcgSource, MtSeedSource, FileSource>;

struct BinarizeStep {
  double threshold = 0.5;
};
struct QuantizeStep {
  int levels = 2;
  double noise_sigma = 0.0;
  std::uint32_t noise_seed = 0;
};
using Transform = std::variant<BinarizeStep, QuantizeStep, LineInjection>;

struct GeneratorSpec {
  Source source;
  std::size_t length = 10000;
  /// by_modulus divides LCG states by M - 1; MT doubles are already in
  /// [0, 1) and file sources are min-max scaled by default.
  Normalization normalize = Normalization::by_modulus;
  std::vector<Transform> transforms;
  std::string name;  // preset name or free label, copied to metadata
};

/// Signal of `length` samples followed by `transforms` in order.
/// Throws insufficient_samples when length < 2 or a file has too few values.
Signal generate(const GeneratorSpec& spec);

/// Named presets: the LCG table plus "mt0" (seed 0) and "mts" (seed 1773456103).
std::vector<std::string> preset_names();
/// Throws config_error listing the valid names for unknown presets.
GeneratorSpec preset(std::string_view name, std::size_t length = 10000);

inline constexpr std::uint32_t kMtRandomSeed = 1773456103U;

/// Integer TRNG dump: one integer per line, or a CSV whose first line is the
/// header "value". Values are min-max normalized to [0, 1]; the metadata
/// records the FNV-1a hash of the file, the raw range and the count.
Signal ingest_trng_file(const std::string& path, FileFormat format = FileFormat::automatic);

}  // namespace disentropy::generators
