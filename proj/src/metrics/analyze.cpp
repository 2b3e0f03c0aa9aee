#include "disentropy/metrics/analyze.hpp"

#include <algorithm>

#include "disentropy/metrics/disentropy.hpp"
#include "disentropy/metrics/nist.hpp"

namespace disentropy::metrics {

std::size_t MetricReport::value_count() const {
  return (disentropy_score ? 1 : 0) + apen.size() + fuzen.size() + apen_pvalue.size();
}

namespace {

template <typename Fn>
void guarded(MetricReport& report, const std::string& metric, std::optional<int> m, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    report.failures.push_back({metric, m, e.code(), e.what()});
  }
}

// Profiles share a single pass over all m; when the pass fails, each m
// is retried alone so that one too-large m does not hide the others.
template <typename Profile>
void entropy_metric(MetricReport& report, const std::string& metric, std::span<const int> ms,
                    Profile&& profile, std::map<int, double>& out) {
  try {
    out = profile(ms);
    return;
  } catch (const Error&) {
  }
  for (int m : ms) {
    const int single[] = {m};
    guarded(report, metric, m, [&] { out[m] = profile(std::span<const int>(single)).at(m); });
  }
}

}  // namespace

MetricReport analyze(const Signal& signal, std::span<const int> m_list, const AnalyzeOptions& options) {
  if (m_list.empty()) throw Error(ErrorCode::invalid_argument, "m_list must not be empty");
  for (int m : m_list) {
    if (m < 1) throw Error(ErrorCode::invalid_argument, "embedding dimensions must be >= 1");
  }
  std::vector<int> ms(m_list.begin(), m_list.end());
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  MetricReport report;
  report.n_samples = signal.size();
  report.domain = signal.domain();
  report.m_list = ms;
  report.options = options;
  report.signal_meta = signal.meta();
  const auto samples = signal.samples();

  if (options.disentropy) {
    guarded(report, "disentropy", std::nullopt, [&] {
      const DisentropyScore s = disentropy_of(samples);
      report.disentropy_d2 = s.d2;
      report.disentropy_score = s.score;
    });
  }
  if (options.approximate_entropy) {
    entropy_metric(report, "apen", ms,
                   [&](std::span<const int> sel) { return apen_profile(samples, sel, options.apen.r_factor); },
                   report.apen);
  }
  if (options.fuzzy_entropy) {
    entropy_metric(report, "fuzen", ms,
                   [&](std::span<const int> sel) { return fuzen_profile(samples, sel, options.fuzen); },
                   report.fuzen);
  }
  if (options.pvalue && signal.domain().kind == DomainKind::binary) {
    for (int m : ms) {
      guarded(report, "apen_pvalue", m, [&] { report.apen_pvalue[m] = apen_nist_pvalue(signal, m); });
    }
  }
  return report;
}

}  // namespace disentropy::metrics
