#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "common.hpp"
#include "disentropy/error.hpp"
#include "disentropy/experiments/parallel.hpp"
#include "disentropy/generators/transforms.hpp"
#include "disentropy/metrics/nist.hpp"

namespace disentropy::experiments {

using detail::add_check;
using detail::num;

namespace {

void require_ascending(const std::vector<std::size_t>& grid, const char* what) {
  if (grid.empty()) throw Error(ErrorCode::config_error, std::string(what) + " must not be empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw Error(ErrorCode::config_error, std::string(what) + " must be strictly ascending");
  }
}

/// max(a/b, b/a) with zero handled as an unbounded ratio.
double fold_ratio(double a, double b) {
  a = std::abs(a);
  b = std::abs(b);
  if (a == b) return 1.0;
  if (a == 0.0 || b == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(a / b, b / a);
}

double ratio(double value, double base) {
  if (base == 0.0) return value == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return value / base;
}

}  // namespace

ExperimentResult run_convergence(const ConvergenceSpec& spec, const RunOptions& opts) {
  require_ascending(spec.n_grid, "n_grid");
  if (spec.m < 1) throw Error(ErrorCode::config_error, "m must be >= 1");
  ExperimentResult result;
  std::vector<std::uint32_t> seeds;
  detail::preset_signal(spec.preset, 2, &seeds);
  if (spec.n_grid.back() < 10000) {
    result.warnings.push_back("largest N is " + std::to_string(spec.n_grid.back()) +
                              "; the settled regime is only reached near N = 10000");
  }

  const int ms[] = {spec.m};
  const auto opt = detail::options(true, true);
  detail::Progress progress(opts, spec.n_grid.size());
  result.rows = parallel_map(spec.n_grid.size(), opts.threads, [&](std::size_t i) {
    const std::size_t n = spec.n_grid[i];
    Row row;
    row.id = "N=" + std::to_string(n);
    row.label("preset", spec.preset).set("n", static_cast<double>(n));
    try {
      detail::record(row, metrics::analyze(detail::preset_signal(spec.preset, n), ms, opt));
    } catch (const Error& e) {
      row.error(std::string(to_string(e.code())) + ": " + e.what());
    }
    progress.tick();
    return row;
  });

  const std::vector<std::string> cols{detail::apen_col(spec.m), detail::fuzen_col(spec.m), detail::kDisentropyCol};
  for (const auto& row : result.rows) {
    for (const auto& c : cols) {
      if (auto v = row.get(c)) result.plot.push_back({c, row.at("n"), *v});
    }
  }

  for (std::size_t w : spec.windows) {
    Row summary;
    summary.id = "oscillation N=" + std::to_string(w);
    summary.label("window", "[" + std::to_string(w / 2) + ", " + std::to_string(w) + "]");
    std::size_t points = 0;
    for (const auto& c : cols) {
      std::vector<double> ns, vals;
      for (const auto& row : result.rows) {
        const double n = row.at("n");
        auto v = row.get(c);
        if (v && n >= static_cast<double>(w) / 2.0 && n <= static_cast<double>(w)) {
          ns.push_back(n);
          vals.push_back(*v);
        }
      }
      points = std::max(points, vals.size());
      if (vals.size() < 2) continue;
      summary.set(c + "_sd", detail::population_sd(vals));
      // Residual sd about the local linear trend isolates the oscillation from the drift.
      if (vals.size() >= 3) {
        const LinearFit fit = fit_line(ns, vals);
        std::vector<double> resid;
        for (std::size_t k = 0; k < ns.size(); ++k) resid.push_back(vals[k] - fit.intercept - fit.slope * ns[k]);
        summary.set(c + "_detrended_sd", detail::population_sd(resid));
      }
    }
    if (points < 2) {
      result.warnings.push_back("fewer than 2 grid points in " + *summary.label_of("window") +
                                "; no oscillation statistic");
      continue;
    }
    summary.set("points", static_cast<double>(points));
    result.summary.push_back(std::move(summary));
  }

  // Expected orders of magnitude of the detrended oscillation.
  const std::vector<std::tuple<std::size_t, std::string, double>> expected{
      {10000, cols[0], 1e-3}, {10000, cols[1], 1e-3}, {10000, cols[2], 1e-4}, {1000, cols[1], 1e-2}, {1000, cols[2], 1e-3}};
  for (const auto& [w, c, target] : expected) {
    const Row* row = result.find_summary("oscillation N=" + std::to_string(w));
    if (row == nullptr) continue;
    auto v = row->get(c + "_detrended_sd");
    if (!v) continue;
    add_check(result, c + " oscillation at N=" + std::to_string(w) + " of order " + num(target),
              *v > 0.0 && std::abs(std::log10(*v / target)) < 1.0, "detrended sd " + num(*v));
  }
  detail::finish(result, spec, seeds);
  return result;
}

ExperimentResult run_prng_compare(const PrngCompareSpec& spec, const RunOptions& opts) {
  const bool binary = spec.domain.kind == DomainKind::binary;
  if (spec.domain.kind == DomainKind::multilevel) {
    throw Error(ErrorCode::config_error, "prng comparison supports analog and binary domains only");
  }
  if (spec.m_list.empty()) throw Error(ErrorCode::config_error, "m_list must not be empty");
  if (binary) {
    const int bound = metrics::nist_max_embedding(spec.n);
    for (int m : spec.m_list) {
      if (m < 1 || m > bound) {
        throw Error(ErrorCode::config_error, "binary m = " + std::to_string(m) + " violates 1 <= m <= floor(log2 N) - 5 = " +
                                                 std::to_string(bound) + " for N = " + std::to_string(spec.n));
      }
    }
  }
  std::vector<std::string> presets = spec.presets.empty() ? generators::preset_names() : spec.presets;
  auto require = [&](const std::string& name) {
    if (std::find(presets.begin(), presets.end(), name) == presets.end()) presets.push_back(name);
  };
  require(spec.baseline);
  for (const auto& g : spec.good) require(g);
  for (const auto& s : spec.suspects) require(s);

  ExperimentResult result;
  std::vector<std::uint32_t> seeds;
  const auto opt = detail::options(true, true, binary);
  detail::Progress progress(opts, presets.size());
  result.rows = parallel_map(presets.size(), opts.threads, [&](std::size_t i) {
    Row row;
    row.id = presets[i];
    row.label("preset", presets[i]).label("domain", to_string(spec.domain));
    try {
      Signal s = detail::preset_signal(presets[i], spec.n);
      if (binary) s = generators::binarize(s);
      detail::record(row, metrics::analyze(s, spec.m_list, opt));
    } catch (const Error& e) {
      row.error(std::string(to_string(e.code())) + ": " + e.what());
    }
    progress.tick();
    return row;
  });
  for (const auto& p : presets) detail::preset_signal(p, 2, &seeds);

  const auto cols = detail::metric_columns(spec.m_list);
  const Row* base = result.find_row(spec.baseline);
  for (auto& row : result.rows) {
    for (const auto& c : cols) {
      auto v = row.get(c);
      auto b = base->get(c);
      if (v && b) {
        const double r = ratio(*v, *b);
        row.set(c + "_ratio", r);
        result.plot.push_back({c, static_cast<double>(&row - result.rows.data()), r});
      }
    }
  }

  // Separation of a suspect from the good group: for the disentropy the
  // smallest suspect/good ratio, for the entropies the smallest two-sided fold.
  for (const auto& suspect : spec.suspects) {
    const Row* srow = result.find_row(suspect);
    for (const auto& c : cols) {
      Row summary;
      summary.id = "separation " + suspect + " " + c;
      summary.label("suspect", suspect).label("metric", c);
      auto sv = srow->get(c);
      double sep = std::numeric_limits<double>::infinity();
      bool complete = sv.has_value();
      for (const auto& g : spec.good) {
        auto gv = result.find_row(g)->get(c);
        if (!gv || !sv) {
          complete = false;
          continue;
        }
        const double r = c == detail::kDisentropyCol ? ratio(*sv, *gv) : fold_ratio(*sv, *gv);
        sep = std::min(sep, r);
      }
      if (!complete) {
        summary.error("missing values for " + suspect + " or the good group");
        result.summary.push_back(std::move(summary));
        continue;
      }
      summary.set("separation", sep);
      const bool separated = sep >= spec.separation;
      summary.set("separated", separated ? 1.0 : 0.0);
      if (c == detail::kDisentropyCol) {
        add_check(result, "disentropy separates " + suspect, separated,
                  "min ratio to good PRNGs " + num(sep) + " (need >= " + num(spec.separation) + ")");
      } else if (!binary || suspect != "lcg1") {
        add_check(result, c + " does not separate " + suspect, !separated,
                  "min fold to good PRNGs " + num(sep) + " (separation at >= " + num(spec.separation) + ")");
      }
      result.summary.push_back(std::move(summary));
    }
  }
  detail::finish(result, spec, seeds);
  return result;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "a line fit needs at least 2 paired points");
  }
  const double mx = detail::mean(x);
  const double my = detail::mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::invalid_argument, "a line fit needs distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

ExperimentResult run_disentropy_vs_n(const DisentropyVsNSpec& spec, const RunOptions& opts) {
  std::vector<std::size_t> grid = spec.n_grid;
  if (grid.empty()) {
    for (std::size_t n = 100; n <= 10000; n += 100) grid.push_back(n);
  }
  require_ascending(grid, "n_grid");
  ExperimentResult result;
  std::vector<std::uint32_t> seeds;
  detail::preset_signal(spec.preset, 2, &seeds);
  const int ms[] = {1};
  const auto opt = detail::options(true, false);
  detail::Progress progress(opts, grid.size());
  result.rows = parallel_map(grid.size(), opts.threads, [&](std::size_t i) {
    Row row;
    row.id = "N=" + std::to_string(grid[i]);
    row.label("preset", spec.preset).set("n", static_cast<double>(grid[i]));
    try {
      detail::record(row, metrics::analyze(detail::preset_signal(spec.preset, grid[i]), ms, opt));
    } catch (const Error& e) {
      row.error(std::string(to_string(e.code())) + ": " + e.what());
    }
    progress.tick();
    return row;
  });

  std::vector<double> xs, ys;
  std::optional<double> probe;
  for (const auto& row : result.rows) {
    auto d = row.get(detail::kDisentropyCol);
    if (!d) continue;
    const double n = row.at("n");
    result.plot.push_back({detail::kDisentropyCol, n, *d});
    if (n >= static_cast<double>(spec.fit_min) && n <= static_cast<double>(spec.fit_max)) {
      xs.push_back(n);
      ys.push_back(*d);
    }
    if (n == static_cast<double>(spec.probe_n)) probe = *d;
  }
  Row fit_row;
  fit_row.id = "linear fit";
  fit_row.label("range", "[" + std::to_string(spec.fit_min) + ", " + std::to_string(spec.fit_max) + "]");
  try {
    const LinearFit fit = fit_line(xs, ys);
    const double at_min = fit.intercept + fit.slope * static_cast<double>(spec.fit_min);
    fit_row.set("slope", fit.slope).set("intercept", fit.intercept).set("r2", fit.r2).set("fit_at_min", at_min);
    fit_row.set("points", static_cast<double>(xs.size()));
    for (double x : xs) result.plot.push_back({"fit", x, fit.intercept + fit.slope * x});
    add_check(result, "slope is positive", fit.slope > 0.0, "slope " + num(fit.slope));
    add_check(result, "linear fit R2 > 0.99", fit.r2 > 0.99, "R2 " + num(fit.r2));
    if (probe) {
      fit_row.set("probe", *probe);
      add_check(result, "disentropy at N=" + std::to_string(spec.probe_n) + " below the fit at N=" +
                            std::to_string(spec.fit_min),
                *probe < at_min, num(*probe) + " vs " + num(at_min));
    } else {
      result.warnings.push_back("probe N=" + std::to_string(spec.probe_n) + " is not on the grid");
    }
  } catch (const Error& e) {
    fit_row.error(e.what());
  }
  result.summary.push_back(std::move(fit_row));
  detail::finish(result, spec, seeds);
  return result;
}

ExperimentResult run_m_sweep(const MSweepSpec& spec, const RunOptions& opts) {
  if (spec.presets.empty()) throw Error(ErrorCode::config_error, "m-sweep needs at least one preset");
  if (spec.m_list.empty()) throw Error(ErrorCode::config_error, "m_list must not be empty");
  std::vector<int> ms = spec.m_list;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  ExperimentResult result;
  std::vector<std::uint32_t> seeds;
  for (const auto& p : spec.presets) detail::preset_signal(p, 2, &seeds);
  const auto opt = detail::options(false, true);
  detail::Progress progress(opts, spec.presets.size());
  auto reports = parallel_map(spec.presets.size(), opts.threads, [&](std::size_t i) {
    Row probe;
    try {
      detail::record(probe, metrics::analyze(detail::preset_signal(spec.presets[i], spec.n), ms, opt));
    } catch (const Error& e) {
      probe.error(std::string(to_string(e.code())) + ": " + e.what());
    }
    progress.tick();
    return probe;
  });

  for (std::size_t p = 0; p < spec.presets.size(); ++p) {
    for (int m : ms) {
      Row row;
      row.id = spec.presets[p] + " m=" + std::to_string(m);
      row.label("preset", spec.presets[p]).set("m", m);
      for (const auto& [name, col] : {std::pair{"apen", detail::apen_col(m)}, std::pair{"fuzen", detail::fuzen_col(m)}}) {
        if (auto v = reports[p].get(col)) {
          row.set(name, *v);
          result.plot.push_back({std::string(name) + " " + spec.presets[p], static_cast<double>(m), *v});
        }
      }
      for (const auto& e : reports[p].errors) {
        if (e.find("[m=" + std::to_string(m) + "]") != std::string::npos) row.error(e);
      }
      result.rows.push_back(std::move(row));
    }
  }

  if (spec.presets.size() < 2) {
    result.warnings.push_back("a single preset gives no contrast statistics");
    detail::finish(result, spec, seeds);
    return result;
  }

  const double noise = spec.noise_multiplier * spec.tail_sigma;
  for (const char* metric : {"apen", "fuzen"}) {
    std::map<int, double> contrast;
    for (int m : ms) {
      const Row* a = result.find_row(spec.presets[0] + " m=" + std::to_string(m));
      const Row* b = result.find_row(spec.presets[1] + " m=" + std::to_string(m));
      auto va = a->get(metric);
      auto vb = b->get(metric);
      if (!va || !vb) continue;
      contrast[m] = std::abs(*va - *vb);
      Row row;
      row.id = std::string(metric) + " contrast m=" + std::to_string(m);
      row.label("metric", metric).set("m", m).set("contrast", contrast[m]);
      result.summary.push_back(std::move(row));
    }
    const std::string label = std::string(metric) + " ";
    if (contrast.count(2) && contrast.count(3)) {
      add_check(result, label + "contrast at m=3 exceeds m=2", contrast[3] > contrast[2],
                num(contrast[3]) + " vs " + num(contrast[2]));
    }
    if (contrast.count(3)) {
      auto best = std::max_element(contrast.begin(), contrast.end(),
                                   [](const auto& x, const auto& y) { return x.second < y.second; });
      add_check(result, label + "contrast is maximal at m=3", best->first == 3,
                "maximum " + num(best->second) + " at m=" + std::to_string(best->first));
    }
    if (contrast.count(1)) {
      add_check(result, label + "m=1 gives no contrast", contrast[1] < noise,
                num(contrast[1]) + " vs noise " + num(noise));
    }
  }
  const Row* last = result.find_row(spec.presets[0] + " m=" + std::to_string(ms.back()));
  if (auto v = last->get("apen"); v && ms.back() >= 6) {
    add_check(result, "apen of " + spec.presets[0] + " near 0 at m=" + std::to_string(ms.back()), *v < 0.1,
              "apen " + num(*v) + " (near 0 means < 0.1)");
  }
  detail::finish(result, spec, seeds);
  return result;
}

ExperimentResult run_multilevel(const MultilevelSpec& spec, const RunOptions& opts) {
  if (spec.levels.empty() || spec.sigmas.empty()) {
    throw Error(ErrorCode::config_error, "levels and sigmas must not be empty");
  }
  for (int l : spec.levels) {
    if (l < generators::kMinLevels || l > generators::kMaxLevels) {
      throw Error(ErrorCode::config_error, "levels must lie in [2, 10]");
    }
  }
  for (double s : spec.sigmas) {
    if (!(s >= 0.0 && s <= generators::kMaxLevelNoise)) throw Error(ErrorCode::config_error, "sigma must lie in [0, 0.1]");
  }
  ExperimentResult result;
  std::vector<std::uint32_t> seeds{spec.noise_seed};
  const Signal base = detail::preset_signal(spec.preset, spec.n, &seeds);
  const int ms[] = {spec.m};
  const auto opt = detail::options(true, true);
  const std::size_t cells = spec.levels.size() * spec.sigmas.size();
  detail::Progress progress(opts, cells);
  result.rows = parallel_map(cells, opts.threads, [&](std::size_t i) {
    const int levels = spec.levels[i / spec.sigmas.size()];
    const double sigma = spec.sigmas[i % spec.sigmas.size()];
    Row row;
    row.id = "levels=" + std::to_string(levels) + " sigma=" + num(sigma);
    row.set("levels", levels).set("sigma", sigma);
    try {
      const Signal q = generators::quantize_levels(base, levels, sigma, spec.noise_seed);
      detail::record(row, metrics::analyze(q, ms, opt));
    } catch (const Error& e) {
      row.error(std::string(to_string(e.code())) + ": " + e.what());
    }
    progress.tick();
    return row;
  });

  const std::string apen = detail::apen_col(spec.m);
  const std::string fuzen = detail::fuzen_col(spec.m);
  for (const auto& row : result.rows) {
    for (const auto& c : {apen, fuzen, std::string(detail::kDisentropyCol)}) {
      if (auto v = row.get(c)) result.plot.push_back({c + " sigma=" + num(row.at("sigma")), row.at("levels"), *v});
    }
  }
  auto cell = [&](int levels, double sigma) -> const Row* {
    return result.find_row("levels=" + std::to_string(levels) + " sigma=" + num(sigma));
  };
  auto check_value = [&](const Row* row, const std::string& col, double target, double tol) {
    if (row == nullptr) return;
    auto v = row->get(col);
    add_check(result, col + " at " + row->id + " = " + num(target) + " +- " + num(tol),
              v && std::abs(*v - target) <= tol, v ? "measured " + num(*v) : "missing");
  };
  check_value(cell(2, 0.0), apen, std::log(2.0), 0.01);
  check_value(cell(10, 0.0), apen, 1.8, 0.05);
  check_value(cell(10, 0.0), fuzen, 1.9, 0.05);
  double worst = 0.0;
  bool complete = true;
  for (const auto& row : result.rows) {
    auto d = row.get(detail::kDisentropyCol);
    if (!d) complete = false;
    else worst = std::max(worst, *d);
  }
  add_check(result, "disentropy below 1e-3 across the grid", complete && worst < 1e-3, "maximum " + num(worst));
  detail::finish(result, spec, seeds);
  return result;
}

}  // namespace disentropy::experiments
