#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "disentropy/error.hpp"
#include "disentropy/experiments/parallel.hpp"
#include "disentropy/generators/puf.hpp"

namespace disentropy::experiments {

using detail::add_check;
using detail::num;
using detail::percent;
using generators::PufConfig;
using generators::PufDefect;

double relative_difference(double ref_mean, double test_mean) {
  if (ref_mean == 0.0) {
    throw Error(ErrorCode::invalid_argument, "relative difference against a zero reference mean");
  }
  return (test_mean - ref_mean) / std::abs(ref_mean);
}

double displayed_difference(double rel_diff, double relative_sd) {
  const double mag = std::abs(rel_diff);
  return (mag < 0.01 && mag < relative_sd) ? 0.0 : rel_diff;
}

namespace {

struct FleetCell {
  Row ref;
  Row test;
};

/// Scores the concatenated responses of every instance of both fleets.
std::vector<FleetCell> score_fleets(const PufConfig& ref, const PufConfig& test, std::span<const int> ms,
                                    const RunOptions& opts, detail::Progress& progress) {
  const auto opt = detail::options(true, true);
  return parallel_map(ref.n_instances * 2, opts.threads, [&](std::size_t c) {
    const std::size_t instance = c / 2;
    const PufConfig& cfg = c % 2 == 0 ? ref : test;
    Row row;
    try {
      const auto responses = generators::puf_instance_responses(cfg, instance);
      detail::record(row, metrics::analyze(generators::concatenate(responses), ms, opt));
    } catch (const Error& e) {
      row.error(std::string(to_string(e.code())) + ": " + e.what());
    }
    progress.tick();
    FleetCell cell;
    (c % 2 == 0 ? cell.ref : cell.test) = std::move(row);
    return cell;
  });
}

struct Comparison {
  double ref_mean = 0.0;
  double test_mean = 0.0;
  double ref_sd = 0.0;
  double test_sd = 0.0;
  double rel_diff = 0.0;
  double relative_sd = 0.0;
  double displayed = 0.0;
  std::size_t count = 0;
};

std::optional<Comparison> compare(const std::vector<double>& ref, const std::vector<double>& test) {
  if (ref.empty() || test.empty()) return std::nullopt;
  Comparison c;
  c.ref_mean = detail::mean(ref);
  c.test_mean = detail::mean(test);
  c.ref_sd = detail::population_sd(ref);
  c.test_sd = detail::population_sd(test);
  c.rel_diff = relative_difference(c.ref_mean, c.test_mean);
  c.relative_sd = c.ref_sd / std::abs(c.ref_mean);
  c.displayed = displayed_difference(c.rel_diff, c.relative_sd);
  c.count = std::min(ref.size(), test.size());
  return c;
}

void set_comparison(Row& row, const Comparison& c) {
  row.set("ref_mean", c.ref_mean).set("test_mean", c.test_mean);
  row.set("ref_sd", c.ref_sd).set("test_sd", c.test_sd);
  row.set("rel_diff", c.rel_diff).set("relative_sd", c.relative_sd).set("displayed", c.displayed);
  row.set("instances", static_cast<double>(c.count));
}

/// Per-instance rows plus one summary row per metric column.
std::map<std::string, Comparison> summarize_fleets(ExperimentResult& result, const std::vector<FleetCell>& cells,
                                                   const std::vector<std::string>& cols, const std::string& tag) {
  std::map<std::string, std::vector<double>> ref, test;
  for (std::size_t c = 0; c < cells.size(); c += 2) {
    const std::size_t instance = c / 2;
    const Row& r = cells[c].ref;
    const Row& t = cells[c + 1].test;
    Row row;
    row.id = tag + " instance " + std::to_string(instance);
    row.label("cell", tag).set("instance", static_cast<double>(instance));
    for (const auto& col : cols) {
      auto rv = r.get(col);
      auto tv = t.get(col);
      if (rv) row.set("ref_" + col, *rv);
      if (tv) row.set("test_" + col, *tv);
      // Instances are only averaged when both fleets produced a value.
      if (rv && tv) {
        ref[col].push_back(*rv);
        test[col].push_back(*tv);
      }
    }
    for (const auto& e : r.errors) row.error("reference: " + e);
    for (const auto& e : t.errors) row.error("test: " + e);
    result.rows.push_back(std::move(row));
  }
  std::map<std::string, Comparison> out;
  for (const auto& col : cols) {
    Row row;
    row.id = tag + " " + col;
    row.label("cell", tag).label("metric", col);
    auto c = compare(ref[col], test[col]);
    if (!c) {
      row.error("no instance produced " + col + " for both fleets");
    } else {
      set_comparison(row, *c);
      out[col] = *c;
    }
    result.summary.push_back(std::move(row));
  }
  return out;
}

std::vector<std::uint32_t> fleet_seeds(const PufConfig& cfg, std::size_t instances) {
  std::vector<std::uint32_t> seeds;
  for (std::size_t i = 0; i < instances; ++i) seeds.push_back(cfg.seed + static_cast<std::uint32_t>(i));
  return seeds;
}

bool is_entropy(const std::string& col) { return col != detail::kDisentropyCol; }

}  // namespace

ExperimentResult run_puf_dynamics(const PufDynamicsSpec& spec, const RunOptions& opts) {
  PufConfig ref = spec.puf;
  ref.defect = PufDefect::none;
  ref.validate();
  PufConfig test = ref;
  test.defect = PufDefect::dynamics;
  test.dynamics = spec.puf.dynamics;
  if (spec.m_list.empty()) throw Error(ErrorCode::config_error, "m_list must not be empty");

  ExperimentResult result;
  auto seeds = fleet_seeds(ref, ref.n_instances);
  const auto cols = detail::metric_columns(spec.m_list);
  detail::Progress progress(opts, ref.n_instances * 2 + (spec.per_response > 0 ? 1 : 0));
  const auto cells = score_fleets(ref, test, spec.m_list, opts, progress);
  const auto cmp = summarize_fleets(result, cells, cols, "concatenation");
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (auto it = cmp.find(cols[i]); it != cmp.end()) result.plot.push_back({cols[i], 0.0, it->second.rel_diff});
  }
  if (auto it = cmp.find(detail::kDisentropyCol); it != cmp.end()) {
    add_check(result, "disentropy increase above +10000%", it->second.rel_diff > 100.0, percent(it->second.rel_diff));
  }
  for (const auto& col : cols) {
    auto it = cmp.find(col);
    if (!is_entropy(col) || it == cmp.end()) continue;
    const double d = it->second.rel_diff;
    add_check(result, col + " decrease between -35% and -5%", d >= -0.35 && d <= -0.05, percent(d));
  }

  if (spec.per_response > 0) {
    PufConfig pr_ref = ref;
    pr_ref.n_responses = spec.per_response;
    pr_ref.n_instances = 1;
    PufConfig pr_test = test;
    pr_test.n_responses = spec.per_response;
    pr_test.n_instances = 1;
    const auto ref_resp = generators::puf_instance_responses(pr_ref, 0);
    const auto test_resp = generators::puf_instance_responses(pr_test, 0);
    const auto opt = detail::options(true, true);
    auto scored = parallel_map(ref_resp.size() * 2, opts.threads, [&](std::size_t c) {
      Row row;
      try {
        detail::record(row, metrics::analyze(c % 2 == 0 ? ref_resp[c / 2] : test_resp[c / 2], spec.m_list, opt));
      } catch (const Error& e) {
        row.error(std::string(to_string(e.code())) + ": " + e.what());
      }
      return row;
    });
    progress.tick();
    std::size_t failed = 0;
    for (const auto& r : scored) failed += r.errors.empty() ? 0 : 1;
    if (failed > 0) result.warnings.push_back(std::to_string(failed) + " per-response scores had metric failures");
    for (const auto& col : cols) {
      std::vector<double> rv, tv;
      for (std::size_t i = 0; i < ref_resp.size(); ++i) {
        auto a = scored[2 * i].get(col);
        auto b = scored[2 * i + 1].get(col);
        if (a && b) {
          rv.push_back(*a);
          tv.push_back(*b);
        }
      }
      Row row;
      row.id = "per-response " + col;
      row.label("cell", "per-response").label("metric", col);
      auto c = compare(rv, tv);
      if (!c) {
        row.error("no response produced " + col + " in both fleets");
        result.summary.push_back(std::move(row));
        continue;
      }
      set_comparison(row, *c);
      row.set("responses", static_cast<double>(c->count));
      if (col == detail::kDisentropyCol) {
        add_check(result, "per-response disentropy increase within [+200%, +500%]",
                  c->rel_diff >= 2.0 && c->rel_diff <= 5.0, percent(c->rel_diff));
      }
      if (col == detail::apen_col(3)) {
        const bool reproduced = c->rel_diff > 0.0;
        row.label("sign_anomaly", reproduced ? "reproduced" : "not reproduced (environment-dependent)");
        if (!reproduced) {
          result.warnings.push_back("per-response apen_m3 sign anomaly not reproduced: mean change " +
                                    percent(c->rel_diff) + "; the sign depends on the response stream");
        }
        add_check(result, "per-response apen_m3 sign anomaly reported", true,
                  std::string(reproduced ? "reproduced: " : "not reproduced, flagged: ") + percent(c->rel_diff));
      }
      result.summary.push_back(std::move(row));
    }
  }
  detail::finish(result, spec, seeds);
  return result;
}

ExperimentResult run_puf_fixed_prefix(const PufPrefixSpec& spec, const RunOptions& opts) {
  if (spec.n_resp_grid.empty()) throw Error(ErrorCode::config_error, "n_resp_grid must not be empty");
  if (spec.m_list.empty()) throw Error(ErrorCode::config_error, "m_list must not be empty");
  PufConfig base = spec.puf;
  base.defect = PufDefect::none;

  struct Study {
    std::string tag;
    PufConfig ref;
    PufConfig test;
  };
  std::vector<Study> studies;
  for (std::size_t n_resp : spec.n_resp_grid) {
    Study s{"N_resp=" + std::to_string(n_resp), base, base};
    s.ref.n_responses = s.test.n_responses = n_resp;
    s.test.defect = PufDefect::fixed_prefix;
    s.test.prefix = spec.puf.prefix;
    s.ref.validate();
    s.test.validate();
    studies.push_back(std::move(s));
  }
  if (spec.fixed_sample) {
    Study s{"fixed-sample N_resp=" + std::to_string(spec.sample.n_responses), base, base};
    s.ref.n_responses = s.test.n_responses = spec.sample.n_responses;
    s.test.defect = PufDefect::fixed_sample;
    s.test.sample_index = spec.sample.index;
    s.test.sample_value = spec.sample.value;
    s.test.validate();
    studies.push_back(std::move(s));
  }

  ExperimentResult result;
  auto seeds = fleet_seeds(base, base.n_instances);
  const auto cols = detail::metric_columns(spec.m_list);
  detail::Progress progress(opts, studies.size() * base.n_instances * 2);
  std::vector<std::map<std::string, Comparison>> cmps;
  for (const auto& s : studies) {
    const auto cells = score_fleets(s.ref, s.test, spec.m_list, opts, progress);
    cmps.push_back(summarize_fleets(result, cells, cols, s.tag));
  }
  for (std::size_t i = 0; i < spec.n_resp_grid.size(); ++i) {
    for (const auto& [col, c] : cmps[i]) {
      result.plot.push_back({col, static_cast<double>(spec.n_resp_grid[i]), c.displayed});
    }
  }

  // Disentropy rank order and scale against the reported 0%, +719%, +4930%.
  std::vector<double> d;
  for (std::size_t i = 0; i < spec.n_resp_grid.size(); ++i) {
    auto it = cmps[i].find(detail::kDisentropyCol);
    d.push_back(it == cmps[i].end() ? std::nan("") : it->second.displayed);
  }
  bool ordered = std::all_of(d.begin(), d.end(), [](double v) { return std::isfinite(v); });
  for (std::size_t i = 1; ordered && i < d.size(); ++i) ordered = d[i] > d[i - 1];
  std::string detail;
  for (std::size_t i = 0; i < d.size(); ++i) detail += (i ? " < " : "") + percent(d[i]);
  add_check(result, "disentropy deltas increase with N_resp", ordered, detail);
  const std::map<std::size_t, double> reference{{100, 0.0}, {200, 7.19}, {500, 49.30}};
  for (std::size_t i = 0; i < spec.n_resp_grid.size(); ++i) {
    auto ref = reference.find(spec.n_resp_grid[i]);
    if (ref == reference.end()) continue;
    const bool ok = ref->second == 0.0 ? d[i] == 0.0 : std::abs(d[i] - ref->second) <= 0.3 * ref->second;
    add_check(result, "disentropy delta at " + studies[i].tag + " near " + percent(ref->second), ok, percent(d[i]));
  }
  double worst = 0.0;
  std::string worst_cell = "none";
  bool within = true;
  for (std::size_t i = 0; i < spec.n_resp_grid.size(); ++i) {
    for (const auto& [col, c] : cmps[i]) {
      if (!is_entropy(col)) continue;
      const double excess = std::abs(c.rel_diff) - (0.005 + c.relative_sd);
      if (excess > 0.0) within = false;
      if (std::abs(c.rel_diff) > worst) {
        worst = std::abs(c.rel_diff);
        worst_cell = studies[i].tag + " " + col;
      }
    }
  }
  add_check(result, "entropy deltas within 0.5% plus fleet sd", within,
            "largest " + percent(worst) + " at " + worst_cell);
  if (spec.fixed_sample) {
    const auto& fixed = cmps.back();
    bool zeros = fixed.size() == cols.size();
    std::string nonzero;
    for (const auto& [col, c] : fixed) {
      if (c.displayed != 0.0) {
        zeros = false;
        nonzero += " " + col + "=" + percent(c.displayed);
      }
    }
    add_check(result, "fixed single sample gives 0% for every metric", zeros,
              nonzero.empty() ? "all displayed as 0%" : "nonzero:" + nonzero);
  }
  detail::finish(result, spec, seeds);
  return result;
}

}  // namespace disentropy::experiments
