#include "disentropy/generators/generate.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "disentropy/error.hpp"
#include "disentropy/generators/mt.hpp"
#include "disentropy/hash.hpp"

namespace disentropy::generators {

std::string_view to_string(Normalization n) noexcept {
  switch (n) {
    case Normalization::by_modulus: return "by_modulus";
    case Normalization::minmax: return "minmax";
    case Normalization::none: return "none";
  }
  return "none";
}

Normalization parse_normalization(std::string_view text) {
  if (text == "by_modulus") return Normalization::by_modulus;
  if (text == "minmax") return Normalization::minmax;
  if (text == "none") return Normalization::none;
  throw Error(ErrorCode::config_error,
              "unknown normalization '" + std::string(text) + "' (by_modulus, minmax, none)");
}

namespace {

void minmax_normalize(std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double min = *lo;
  const double span = *hi - *lo;
  if (!(span > 0.0)) throw Error(ErrorCode::zero_variance, "cannot min-max normalize a constant sequence");
  for (auto& x : v) x = (x - min) / span;
}

std::string describe(const LcgParams& p) {
  std::ostringstream os;
  os << "M=" << p.modulus << ",a=" << p.multiplier << ",c=" << p.increment << ",x0=" << p.seed;
  return os.str();
}

struct Drawn {
  std::vector<double> values;
  Metadata meta;
};

Drawn draw(const LcgSource& src, std::size_t n, Normalization norm) {
  Lcg lcg(src.params);
  Drawn d;
  d.values.resize(n);
  for (auto& v : d.values) v = static_cast<double>(lcg.next());
  if (norm == Normalization::by_modulus) {
    const double scale = 1.0 / static_cast<double>(src.params.modulus - 1);
    for (auto& v : d.values) v *= scale;
  } else if (norm == Normalization::minmax) {
    minmax_normalize(d.values);
  }
  d.meta["source"] = "lcg";
  d.meta["lcg"] = describe(src.params);
  d.meta["seed"] = std::to_string(src.params.seed);
  return d;
}

Drawn draw(const MtSeedSource& src, std::size_t n, Normalization norm) {
  MtSource mt(src.seed);
  Drawn d;
  d.values.resize(n);
  for (auto& v : d.values) v = mt.next_double();
  if (norm == Normalization::minmax) minmax_normalize(d.values);
  d.meta["source"] = "mt19937";
  d.meta["seed"] = std::to_string(src.seed);
  d.meta["engine_key"] = std::to_string(mt_engine_key(src.seed));
  d.meta["double_construction"] = "res53";
  return d;
}

Drawn draw(const FileSource& src, std::size_t n, Normalization) {
  Signal file = ingest_trng_file(src.path, src.format);
  if (file.size() < n) {
    throw Error(ErrorCode::insufficient_samples, "file '" + src.path + "' holds " + std::to_string(file.size()) +
                                                     " values, " + std::to_string(n) + " requested");
  }
  Drawn d;
  d.meta = file.meta();
  auto all = std::move(file).take_samples();
  all.resize(n);
  d.values = std::move(all);
  return d;
}

Signal apply_transform(const Signal& s, const Transform& t) {
  return std::visit(
      [&](const auto& step) -> Signal {
        using T = std::decay_t<decltype(step)>;
        if constexpr (std::is_same_v<T, BinarizeStep>) {
          return binarize(s, step.threshold);
        } else if constexpr (std::is_same_v<T, QuantizeStep>) {
          return quantize_levels(s, step.levels, step.noise_sigma, step.noise_seed);
        } else {
          return inject_line(s, step);
        }
      },
      t);
}

}  // namespace

Signal generate(const GeneratorSpec& spec) {
  if (spec.length < 2) throw Error(ErrorCode::insufficient_samples, "signal length must be >= 2");
  Drawn d = std::visit([&](const auto& src) { return draw(src, spec.length, spec.normalize); }, spec.source);
  d.meta["normalization"] = std::holds_alternative<FileSource>(spec.source) ? "minmax" : std::string(to_string(spec.normalize));
  d.meta["length"] = std::to_string(spec.length);
  if (!spec.name.empty()) d.meta["generator"] = spec.name;
  Signal s(std::move(d.values), Domain::analog(), std::move(d.meta));
  for (const auto& t : spec.transforms) s = apply_transform(s, t);
  return s;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names{"mt0", "mts"};
  for (const auto& p : lcg_presets()) names.emplace_back(p.name);
  return names;
}

GeneratorSpec preset(std::string_view name, std::size_t length) {
  GeneratorSpec spec;
  spec.length = length;
  spec.name = std::string(name);
  if (name == "mt0") {
    spec.source = MtSeedSource{0};
    return spec;
  }
  if (name == "mts") {
    spec.source = MtSeedSource{kMtRandomSeed};
    return spec;
  }
  if (const LcgPreset* p = find_lcg_preset(name)) {
    spec.source = LcgSource{p->params};
    return spec;
  }
  std::string valid;
  for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::config_error, "unknown preset '" + std::string(name) + "'; valid presets: " + valid);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

Signal ingest_trng_file(const std::string& path, FileFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
  const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::io_error, "failed to read '" + path + "'");

  std::vector<double> values;
  std::istringstream lines(content);
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = format == FileFormat::csv;
  bool first_content = true;
  long long raw_min = 0;
  long long raw_max = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const std::string_view tok = trim(line);
    if (tok.empty()) continue;
    if (first_content) {
      first_content = false;
      if (format == FileFormat::automatic && tok == "value") header_pending = true;
      if (header_pending) {
        if (tok != "value") {
          throw Error(ErrorCode::file_parse_error,
                      path + ":" + std::to_string(line_no) + ": expected CSV header 'value'");
        }
        continue;
      }
    }
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw Error(ErrorCode::file_parse_error,
                  path + ":" + std::to_string(line_no) + ": '" + std::string(tok) + "' is not an integer");
    }
    if (values.empty() || v < raw_min) raw_min = v;
    if (values.empty() || v > raw_max) raw_max = v;
    values.push_back(static_cast<double>(v));
  }
  if (values.size() < 2) {
    throw Error(ErrorCode::insufficient_samples,
                "file '" + path + "' holds " + std::to_string(values.size()) + " values, at least 2 needed");
  }
  minmax_normalize(values);
  Metadata meta{{"source", "file"},
                {"path", path},
                {"file_hash", "fnv1a64:" + fnv1a64_hex(content)},
                {"count", std::to_string(values.size())},
                {"raw_min", std::to_string(raw_min)},
                {"raw_max", std::to_string(raw_max)},
                {"normalization", "minmax"}};
  return Signal(std::move(values), Domain::analog(), std::move(meta));
}

}  // namespace disentropy::generators
