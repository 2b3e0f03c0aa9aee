#include "disentropy/error.hpp"
#include "disentropy/experiments/experiments.hpp"

namespace disentropy::experiments {

ExperimentResult run(const ExperimentSpec& spec, const RunOptions& opts) {
  return std::visit(
      [&](const auto& s) -> ExperimentResult {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConvergenceSpec>) return run_convergence(s, opts);
        else if constexpr (std::is_same_v<T, PrngCompareSpec>) return run_prng_compare(s, opts);
        else if constexpr (std::is_same_v<T, DisentropyVsNSpec>) return run_disentropy_vs_n(s, opts);
        else if constexpr (std::is_same_v<T, MSweepSpec>) return run_m_sweep(s, opts);
        else if constexpr (std::is_same_v<T, MultilevelSpec>) return run_multilevel(s, opts);
        else if constexpr (std::is_same_v<T, LineScanSpec>) return run_line_scan(s, opts);
        else if constexpr (std::is_same_v<T, PufDynamicsSpec>) return run_puf_dynamics(s, opts);
        else if constexpr (std::is_same_v<T, PufPrefixSpec>) return run_puf_fixed_prefix(s, opts);
        else return run_trng_compare(s, opts);
      },
      spec);
}

const std::vector<std::string>& registry_names() {
  static const std::vector<std::string> names{"convergence", "prng-analog", "prng-binary", "d-vs-n",      "m-sweep",
                                              "multilevel",  "line-scan",   "puf-dynamics", "puf-prefix", "trng"};
  return names;
}

ExperimentSpec default_spec(std::string_view name) {
  if (name == "convergence") return ConvergenceSpec{};
  if (name == "prng-analog") return PrngCompareSpec::analog();
  if (name == "prng-binary") return PrngCompareSpec::binary();
  if (name == "d-vs-n") return DisentropyVsNSpec{};
  if (name == "m-sweep") return MSweepSpec{};
  if (name == "multilevel") return MultilevelSpec{};
  if (name == "line-scan") return LineScanSpec{};
  if (name == "puf-dynamics") return PufDynamicsSpec{};
  if (name == "puf-prefix") return PufPrefixSpec{};
  if (name == "trng") return TrngSpec{};
  std::string list;
  for (const auto& n : registry_names()) list += (list.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::config_error, "unknown experiment '" + std::string(name) + "'; valid experiments: " + list);
}

}  // namespace disentropy::experiments
