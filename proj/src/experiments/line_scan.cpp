#include <algorithm>
#include <cmath>
#include <set>

#include "common.hpp"
#include "disentropy/error.hpp"
#include "disentropy/experiments/parallel.hpp"
#include "disentropy/generators/transforms.hpp"

namespace disentropy::experiments {

using detail::add_check;
using detail::num;

ExperimentResult run_line_scan(const LineScanSpec& spec, const RunOptions& opts) {
  if (spec.shams < 2) throw Error(ErrorCode::config_error, "line scan needs at least 2 sham injections");
  if (!(spec.multiplier > 0.0)) throw Error(ErrorCode::config_error, "detection multiplier must be positive");
  std::set<std::size_t> periods(spec.disentropy_periods.begin(), spec.disentropy_periods.end());
  periods.insert(spec.entropy_periods.begin(), spec.entropy_periods.end());
  const std::vector<std::size_t> grid(periods.begin(), periods.end());

  ExperimentResult result;
  std::vector<std::uint32_t> seeds;
  const Signal clean = detail::preset_signal(spec.preset, spec.n, &seeds);
  for (std::size_t k = 0; k < spec.shams; ++k) seeds.push_back(spec.sham_seed + static_cast<std::uint32_t>(k));

  auto injection = [&](std::size_t p) {
    generators::LineInjection inj;
    inj.period = p;
    inj.start = spec.start;
    inj.start_value = spec.start_value;
    inj.validate(spec.n);
    return inj;
  };
  for (std::size_t p : grid) injection(p);

  auto entropy_period = [&](std::size_t p) {
    return std::find(spec.entropy_periods.begin(), spec.entropy_periods.end(), p) != spec.entropy_periods.end();
  };
  auto disentropy_period = [&](std::size_t p) {
    return std::find(spec.disentropy_periods.begin(), spec.disentropy_periods.end(), p) !=
           spec.disentropy_periods.end();
  };

  // Cell v of period p: v == 0 is the line, v >= 1 the sham with seed sham_seed + v - 1.
  const std::size_t variants = spec.shams + 1;
  const std::size_t cells = 1 + grid.size() * variants;
  detail::Progress progress(opts, cells);
  const auto scored = parallel_map(cells, opts.threads, [&](std::size_t c) {
    Row row;
    try {
      if (c == 0) {
        detail::record(row, metrics::analyze(clean, spec.m_list, detail::options(true, true)));
      } else {
        const std::size_t p = grid[(c - 1) / variants];
        const std::size_t v = (c - 1) % variants;
        const auto inj = injection(p);
        const Signal s = v == 0 ? generators::inject_line(clean, inj)
                                : generators::inject_noise(clean, inj, spec.sham_seed + static_cast<std::uint32_t>(v - 1));
        detail::record(row, metrics::analyze(s, spec.m_list, detail::options(disentropy_period(p), entropy_period(p))));
      }
    } catch (const Error& e) {
      row.error(std::string(to_string(e.code())) + ": " + e.what());
    }
    progress.tick();
    return row;
  });

  const Row& base = scored[0];
  Row clean_row = base;
  clean_row.id = "clean";
  clean_row.label("preset", spec.preset);
  result.rows.push_back(clean_row);

  struct Target {
    std::string col;
    std::optional<int> m;
  };
  std::vector<Target> targets{{detail::kDisentropyCol, std::nullopt}};
  for (int m : spec.m_list) targets.push_back({detail::apen_col(m), m});
  for (int m : spec.m_list) targets.push_back({detail::fuzen_col(m), m});

  for (const auto& t : targets) {
    const bool is_disentropy = !t.m.has_value();
    std::vector<std::size_t> mismatches;
    std::optional<std::size_t> boundary;
    bool contiguous = true;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      const std::size_t p = grid[gi];
      if (is_disentropy ? !disentropy_period(p) : !entropy_period(p)) continue;
      Row row;
      row.id = t.col + " p_line=" + std::to_string(p);
      row.label("metric", t.col).set("p_line", static_cast<double>(p));
      if (t.m) row.set("m", *t.m);
      const Row& line = scored[1 + gi * variants];
      std::vector<double> sham;
      for (std::size_t v = 1; v < variants; ++v) {
        if (auto x = scored[1 + gi * variants + v].get(t.col)) sham.push_back(*x);
      }
      auto c0 = base.get(t.col);
      auto x = line.get(t.col);
      for (const auto& e : line.errors) row.error("line: " + e);
      if (!c0 || !x || sham.size() < 2) {
        row.error("missing clean, line or sham values");
        result.rows.push_back(std::move(row));
        continue;
      }
      const double deviation = std::abs(*x - *c0);
      const double sd = detail::population_sd(sham);
      const bool detected = deviation > spec.multiplier * sd;
      row.set("clean", *c0).set("line", *x).set("deviation", deviation);
      row.set("sham_mean", detail::mean(sham)).set("sham_sd", sd).set("shams", static_cast<double>(sham.size()));
      row.set("z", sd > 0.0 ? deviation / sd : (deviation > 0.0 ? INFINITY : 0.0));
      row.set("detected", detected ? 1.0 : 0.0);
      result.plot.push_back({t.col + " z", static_cast<double>(p), row.at("z")});
      if (detected && contiguous) boundary = p;
      if (!detected) contiguous = false;
      if (t.m && detected != (static_cast<int>(p) <= *t.m)) mismatches.push_back(p);
      result.rows.push_back(std::move(row));
    }
    if (t.m) {
      std::string detail = mismatches.empty() ? "all periods as expected" : "unexpected at p_line =";
      for (std::size_t p : mismatches) detail += " " + std::to_string(p);
      add_check(result, t.col + " detects iff p_line <= " + std::to_string(*t.m), mismatches.empty(), detail);
    } else {
      Row summary;
      summary.id = "disentropy boundary";
      summary.set("boundary", boundary ? static_cast<double>(*boundary) : 0.0).set("reference", 40.0);
      result.summary.push_back(std::move(summary));
      for (auto [p, expect] : {std::pair<std::size_t, bool>{40, true}, {64, false}}) {
        const Row* r = result.find_row(t.col + " p_line=" + std::to_string(p));
        if (r == nullptr || !r->get("detected")) continue;
        const bool detected = r->at("detected") != 0.0;
        add_check(result, std::string("disentropy ") + (expect ? "detects" : "misses") + " p_line=" + std::to_string(p),
                  detected == expect, "z = " + num(r->at("z")) + " against " + num(spec.multiplier));
      }
    }
  }
  detail::finish(result, spec, seeds);
  return result;
}

}  // namespace disentropy::experiments
