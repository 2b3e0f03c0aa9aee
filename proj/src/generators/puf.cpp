#include "disentropy/generators/puf.hpp"

#include <string>

#include "disentropy/error.hpp"
#include "disentropy/generators/mt.hpp"

namespace disentropy::generators {
namespace {

bool unit(double v) { return v >= 0.0 && v <= 1.0; }

std::string_view defect_name(PufDefect d) {
  switch (d) {
    case PufDefect::none: return "none";
    case PufDefect::dynamics: return "dynamics";
    case PufDefect::fixed_prefix: return "fixed_prefix";
    case PufDefect::fixed_sample: return "fixed_sample";
  }
  return "none";
}

}  // namespace

void PufConfig::validate() const {
  if (response_len < 2) throw Error(ErrorCode::config_error, "PUF response length must be >= 2");
  if (n_responses < 1 || n_instances < 1) {
    throw Error(ErrorCode::config_error, "PUF fleets need at least one instance and one response");
  }
  switch (defect) {
    case PufDefect::none: break;
    case PufDefect::dynamics:
      if (!unit(dynamics.high) || !unit(dynamics.low) || !unit(dynamics.after_high) || !unit(dynamics.after_low)) {
        throw Error(ErrorCode::config_error, "dynamics thresholds and values must lie in [0, 1]");
      }
      break;
    case PufDefect::fixed_prefix:
      if (prefix.empty() || prefix.size() >= response_len) {
        throw Error(ErrorCode::config_error, "fixed prefix must be non-empty and shorter than the response");
      }
      for (double v : prefix) {
        if (!unit(v)) throw Error(ErrorCode::config_error, "fixed prefix values must lie in [0, 1]");
      }
      break;
    case PufDefect::fixed_sample:
      if (sample_index >= response_len) throw Error(ErrorCode::config_error, "fixed sample index out of range");
      if (!unit(sample_value)) throw Error(ErrorCode::config_error, "fixed sample value must lie in [0, 1]");
      break;
  }
}

void apply_dynamics(std::span<double> response, const DynamicsRule& rule) {
  double previous = response.empty() ? 0.0 : response[0];
  for (std::size_t k = 1; k < response.size(); ++k) {
    const double raw = response[k];
    if (previous >= rule.high) {
      response[k] = rule.after_high;
    } else if (previous <= rule.low) {
      response[k] = rule.after_low;
    }
    previous = raw;
  }
}

std::vector<Signal> puf_instance_responses(const PufConfig& cfg, std::size_t instance) {
  cfg.validate();
  const auto seed = static_cast<std::uint32_t>(cfg.seed + instance);
  MtSource mt(seed);
  std::vector<Signal> out;
  out.reserve(cfg.n_responses);
  for (std::size_t r = 0; r < cfg.n_responses; ++r) {
    std::vector<double> v(cfg.response_len);
    for (auto& x : v) x = mt.next_double();
    switch (cfg.defect) {
      case PufDefect::none: break;
      case PufDefect::dynamics: apply_dynamics(v, cfg.dynamics); break;
      case PufDefect::fixed_prefix: std::copy(cfg.prefix.begin(), cfg.prefix.end(), v.begin()); break;
      case PufDefect::fixed_sample: v[cfg.sample_index] = cfg.sample_value; break;
    }
    Metadata meta{{"source", "puf"},
                  {"instance", std::to_string(instance)},
                  {"response", std::to_string(r)},
                  {"seed", std::to_string(seed)},
                  {"defect", std::string(defect_name(cfg.defect))}};
    out.emplace_back(std::move(v), Domain::analog(), std::move(meta));
  }
  return out;
}

std::vector<std::vector<Signal>> puf_responses(const PufConfig& cfg) {
  std::vector<std::vector<Signal>> fleet;
  fleet.reserve(cfg.n_instances);
  for (std::size_t i = 0; i < cfg.n_instances; ++i) fleet.push_back(puf_instance_responses(cfg, i));
  return fleet;
}

Signal concatenate(std::span<const Signal> parts) {
  if (parts.empty()) throw Error(ErrorCode::empty_list, "nothing to concatenate");
  const Domain domain = parts.front().domain();
  std::size_t total = 0;
  for (const auto& p : parts) {
    if (!(p.domain() == domain)) {
      throw Error(ErrorCode::mixed_domain, "cannot concatenate signals of domains " + to_string(domain) +
                                               " and " + to_string(p.domain()));
    }
    total += p.size();
  }
  std::vector<double> out;
  out.reserve(total);
  for (const auto& p : parts) out.insert(out.end(), p.samples().begin(), p.samples().end());
  Metadata meta = parts.front().meta();
  meta.erase("response");
  meta["parts"] = std::to_string(parts.size());
  std::string sources;
  for (const auto& p : parts) {
    const auto it = p.meta().find("response");
    if (it == p.meta().end()) continue;
    if (!sources.empty()) sources += ',';
    sources += it->second;
  }
  if (!sources.empty()) meta["responses"] = sources;
  return Signal(std::move(out), domain, std::move(meta));
}

}  // namespace disentropy::generators
