#include "disentropy/experiments/spec.hpp"

#include <json.hpp>

namespace disentropy::experiments {

using json = nlohmann::ordered_json;

std::vector<std::size_t> default_convergence_grid() {
  std::vector<std::size_t> grid;
  for (std::size_t n = 100; n <= 1000; n += 100) grid.push_back(n);
  for (std::size_t n = 1500; n <= 10000; n += 500) grid.push_back(n);
  return grid;
}

PrngCompareSpec PrngCompareSpec::analog() { return {}; }

PrngCompareSpec PrngCompareSpec::binary() {
  PrngCompareSpec s;
  s.domain = Domain::binary();
  s.m_list = {2, 3, 8};
  s.suspects = {"lcg1", "lcg2", "lcg3", "lcg4"};
  return s;
}

namespace {

std::string_view defect_name(generators::PufDefect d) {
  switch (d) {
    case generators::PufDefect::none: return "none";
    case generators::PufDefect::dynamics: return "dynamics";
    case generators::PufDefect::fixed_prefix: return "fixed_prefix";
    case generators::PufDefect::fixed_sample: return "fixed_sample";
  }
  return "none";
}

json puf_json(const generators::PufConfig& c) {
  return {{"response_len", c.response_len},
          {"n_responses", c.n_responses},
          {"n_instances", c.n_instances},
          {"defect", defect_name(c.defect)},
          {"dynamics",
           {{"high", c.dynamics.high},
            {"low", c.dynamics.low},
            {"after_high", c.dynamics.after_high},
            {"after_low", c.dynamics.after_low}}},
          {"prefix", c.prefix},
          {"sample_index", c.sample_index},
          {"sample_value", c.sample_value},
          {"seed", c.seed}};
}

struct ToJson {
  json operator()(const ConvergenceSpec& s) const {
    return {{"preset", s.preset}, {"m", s.m}, {"n_grid", s.n_grid}, {"windows", s.windows}};
  }
  json operator()(const PrngCompareSpec& s) const {
    return {{"domain", to_string(s.domain)}, {"m_list", s.m_list},   {"n", s.n},
            {"baseline", s.baseline},        {"presets", s.presets}, {"good", s.good},
            {"suspects", s.suspects},        {"separation", s.separation}};
  }
  json operator()(const DisentropyVsNSpec& s) const {
    return {{"preset", s.preset},   {"n_grid", s.n_grid},   {"fit_min", s.fit_min},
            {"fit_max", s.fit_max}, {"probe_n", s.probe_n}};
  }
  json operator()(const MSweepSpec& s) const {
    return {{"presets", s.presets},
            {"m_list", s.m_list},
            {"n", s.n},
            {"tail_sigma", s.tail_sigma},
            {"noise_multiplier", s.noise_multiplier}};
  }
  json operator()(const MultilevelSpec& s) const {
    return {{"preset", s.preset}, {"n", s.n}, {"levels", s.levels},
            {"sigmas", s.sigmas}, {"m", s.m}, {"noise_seed", s.noise_seed}};
  }
  json operator()(const LineScanSpec& s) const {
    return {{"preset", s.preset},
            {"n", s.n},
            {"m_list", s.m_list},
            {"entropy_periods", s.entropy_periods},
            {"disentropy_periods", s.disentropy_periods},
            {"start", s.start},
            {"start_value", s.start_value},
            {"shams", s.shams},
            {"sham_seed", s.sham_seed},
            {"multiplier", s.multiplier}};
  }
  json operator()(const PufDynamicsSpec& s) const {
    return {{"puf", puf_json(s.puf)}, {"m_list", s.m_list}, {"per_response", s.per_response}};
  }
  json operator()(const PufPrefixSpec& s) const {
    return {{"puf", puf_json(s.puf)},
            {"n_resp_grid", s.n_resp_grid},
            {"m_list", s.m_list},
            {"fixed_sample", s.fixed_sample},
            {"sample",
             {{"index", s.sample.index}, {"value", s.sample.value}, {"n_responses", s.sample.n_responses}}}};
  }
  json operator()(const TrngSpec& s) const {
    return {{"files", s.files},
            {"m_list", s.m_list},
            {"min_values", s.min_values},
            {"reference", s.reference},
            {"entropy_tolerance", s.entropy_tolerance},
            {"disentropy_low", s.disentropy_low},
            {"disentropy_high", s.disentropy_high}};
  }
};

struct Name {
  std::string operator()(const ConvergenceSpec&) const { return "convergence"; }
  std::string operator()(const PrngCompareSpec& s) const {
    return s.domain.kind == DomainKind::binary ? "prng-binary" : "prng-analog";
  }
  std::string operator()(const DisentropyVsNSpec&) const { return "d-vs-n"; }
  std::string operator()(const MSweepSpec&) const { return "m-sweep"; }
  std::string operator()(const MultilevelSpec&) const { return "multilevel"; }
  std::string operator()(const LineScanSpec&) const { return "line-scan"; }
  std::string operator()(const PufDynamicsSpec&) const { return "puf-dynamics"; }
  std::string operator()(const PufPrefixSpec&) const { return "puf-prefix"; }
  std::string operator()(const TrngSpec&) const { return "trng"; }
};

}  // namespace

std::string experiment_name(const ExperimentSpec& spec) { return std::visit(Name{}, spec); }

std::string canonical_json(const ExperimentSpec& spec) {
  json doc{{"experiment", experiment_name(spec)}, {"parameters", std::visit(ToJson{}, spec)}};
  return doc.dump();
}

}  // namespace disentropy::experiments
