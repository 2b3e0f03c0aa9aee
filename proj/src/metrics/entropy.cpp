#include "disentropy/metrics/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "disentropy/error.hpp"
#include "disentropy/metrics/compensated_sum.hpp"
#include "kernels.hpp"

namespace disentropy::metrics {

double Membership::operator()(double distance, double radius) const {
  const double x = distance / radius;
  switch (kind) {
    case MembershipKind::gaussian: return std::exp(-0.5 * x * x);
    case MembershipKind::exponential: return std::exp(-std::pow(x, power));
    case MembershipKind::triangular: return x < 1.0 ? 1.0 - x : 0.0;
    case MembershipKind::z_shaped:
      if (x <= 0.5) return 1.0 - 2.0 * x * x;
      if (x <= 1.0) return 2.0 * (1.0 - x) * (1.0 - x);
      return 0.0;
    case MembershipKind::constant_gaussian:
      return x <= 1.0 ? 1.0 : std::exp(-0.5 * (x - 1.0) * (x - 1.0));
  }
  return 0.0;
}

std::string Membership::describe() const {
  switch (kind) {
    case MembershipKind::gaussian: return "gaussian: exp(-d^2/(2r^2))";
    case MembershipKind::exponential: {
      std::ostringstream os;
      os << "exponential: exp(-(d/r)^" << power << ")";
      return os.str();
    }
    case MembershipKind::triangular: return "triangular: max(0, 1-d/r)";
    case MembershipKind::z_shaped: return "z_shaped: 1-2(d/r)^2 | 2(1-d/r)^2 | 0, knots r/2, r";
    case MembershipKind::constant_gaussian: return "constant_gaussian: 1 for d<=r, exp(-(d-r)^2/(2r^2))";
  }
  return "unknown";
}

Membership Membership::parse(const std::string& text) {
  if (text == "gaussian") return {MembershipKind::gaussian};
  if (text == "triangular") return {MembershipKind::triangular};
  if (text == "z_shaped") return {MembershipKind::z_shaped};
  if (text == "constant_gaussian") return {MembershipKind::constant_gaussian};
  const std::string prefix = "exponential";
  if (text.rfind(prefix, 0) == 0) {
    Membership mf{MembershipKind::exponential, 2.0};
    if (text.size() > prefix.size()) {
      if (text[prefix.size()] != ':') {
        throw Error(ErrorCode::invalid_argument, "bad membership '" + text + "'");
      }
      try {
        mf.power = std::stod(text.substr(prefix.size() + 1));
      } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_argument, "bad exponential power in '" + text + "'");
      }
      if (!(mf.power > 0.0)) throw Error(ErrorCode::invalid_argument, "exponential power must be > 0");
    }
    return mf;
  }
  throw Error(ErrorCode::invalid_argument,
              "unknown membership '" + text +
                  "' (gaussian, exponential[:power], triangular, z_shaped, constant_gaussian)");
}

namespace {

void check_embedding(std::size_t n, int m) {
  if (m < 1) throw Error(ErrorCode::invalid_argument, "embedding dimension m must be >= 1");
  if (n <= static_cast<std::size_t>(m) + 1) {
    throw Error(ErrorCode::too_short, "signal of length " + std::to_string(n) +
                                           " is too short for m = " + std::to_string(m));
  }
}

int checked_max_m(std::size_t n, std::span<const int> ms) {
  if (ms.empty()) throw Error(ErrorCode::invalid_argument, "list of embedding dimensions is empty");
  for (int m : ms) check_embedding(n, m);
  return *std::max_element(ms.begin(), ms.end());
}

double phi_from_counts(const std::vector<std::uint32_t>& counts, std::size_t templates) {
  const auto n = static_cast<double>(templates);
  CompensatedSum sum;
  for (std::size_t i = 0; i < templates; ++i) sum += std::log(static_cast<double>(counts[i]) / n);
  return sum.value() / n;
}

// Per-window similarity accumulators shared by the fuzzy kernels. Window
// length k is stored at index k - 1.
struct FuzzySums {
  std::vector<CompensatedSum> truncated;  // pairs among the first N - k templates
  std::vector<CompensatedSum> full;       // pairs among all N - k + 1 templates
  std::vector<std::vector<double>> rows;  // per-template sums (phi_difference only)
};

// Baseline-removed templates: each window is compared after subtracting its
// own mean, so the per-element shortcut does not apply.
void accumulate_fuzzy_centered(std::span<const double> s, int max_len, bool with_rows,
                               const Membership& mf, double radius, FuzzySums& out) {
  const std::size_t n = s.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + s[i];
  for (int k = 1; k <= max_len; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const std::size_t templates = n - ku + 1;
    std::vector<double> means(templates);
    for (std::size_t i = 0; i < templates; ++i) means[i] = (prefix[i + ku] - prefix[i]) / k;
    for (std::size_t d = 1; d < templates; ++d) {
      double partial = 0.0;
      for (std::size_t i = 0; i + d < templates; ++i) {
        const double offset = means[i] - means[i + d];
        double dist = 0.0;
        for (std::size_t t = 0; t < ku; ++t) {
          dist = std::max(dist, std::abs(s[i + t] - s[i + d + t] - offset));
        }
        const double g = mf(dist, radius);
        if (i + d + 1 < templates) partial += g;
        else out.full[ku - 1] += g;
        if (with_rows) {
          out.rows[ku - 1][i] += g;
          out.rows[ku - 1][i + d] += g;
        }
      }
      out.truncated[ku - 1] += partial;
      out.full[ku - 1] += partial;
    }
  }
}

FuzzySums fuzzy_sums(std::span<const double> s, int max_len, const EntropyParams& params,
                     double radius) {
  const bool with_rows = params.statistic == FuzzyStatistic::phi_difference;
  FuzzySums sums;
  sums.truncated.resize(static_cast<std::size_t>(max_len));
  sums.full.resize(static_cast<std::size_t>(max_len));
  if (with_rows) {
    sums.rows.assign(static_cast<std::size_t>(max_len), std::vector<double>(s.size(), 0.0));
  }
  const Membership& mf = params.membership;
  if (params.remove_baseline) {
    accumulate_fuzzy_centered(s, max_len, with_rows, mf, radius, sums);
  } else {
    detail::Grade grade;
    if (mf.kind == MembershipKind::gaussian) {
      grade.kind = detail::Grade::Kind::gaussian;
      grade.scale = 1.0 / (2.0 * radius * radius);
    } else {
      grade.kind = detail::Grade::Kind::custom;
      grade.custom = [&mf, radius](double a) { return mf(a, radius); };
    }
    auto grade_of = [&](double a) {
      return grade.kind == detail::Grade::Kind::gaussian ? std::exp(-(a * a) * grade.scale) : grade.custom(a);
    };
    const detail::PairSums pairs = detail::pair_window_sums(s, max_len, grade, with_rows);
    const std::size_t n = s.size();
    for (std::size_t k = 1; k <= static_cast<std::size_t>(max_len); ++k) {
      const auto& row = pairs.row[k - 1];
      CompensatedSum total;
      for (double v : row) total += v;
      sums.full[k - 1] += total.value();
      // pairs among the first N - k templates exclude partner j = N - k
      const std::size_t last = n - k;
      double last_col = 0.0;
      for (std::size_t i = 0; i < last; ++i) {
        double g = 1.0;
        for (std::size_t t = 0; t < k; ++t) g = std::min(g, grade_of(std::abs(s[i + t] - s[last + t])));
        last_col += g;
      }
      sums.truncated[k - 1] += total.value();
      sums.truncated[k - 1] += -last_col;
      if (with_rows) {
        for (std::size_t i = 0; i < n; ++i) sums.rows[k - 1][i] = row[i] + pairs.col[k - 1][i];
      }
    }
  }
  return sums;
}

}  // namespace

double tolerance(std::span<const double> samples, double r_factor) {
  if (!(r_factor > 0.0)) throw Error(ErrorCode::invalid_argument, "r_factor must be > 0");
  require_finite(samples);
  if (std::all_of(samples.begin(), samples.end(), [&](double v) { return v == samples[0]; })) {
    throw Error(ErrorCode::zero_variance, "signal has zero variance (all samples equal)");
  }
  return r_factor * sample_stddev(samples);
}

MatchCounts template_match_counts(std::span<const double> s, double radius, int max_length) {
  const std::size_t n = s.size();
  if (max_length < 1 || static_cast<std::size_t>(max_length) >= n) {
    throw Error(ErrorCode::invalid_argument, "template length out of range");
  }
  const auto kmax = static_cast<std::size_t>(max_length);
  MatchCounts out;
  out.max_length = max_length;
  out.counts.resize(kmax);
  for (std::size_t k = 1; k <= kmax; ++k) out.counts[k - 1].assign(n - k + 1, 1U);  // self-match

  // Only pairs whose first elements match can start a matching window, so
  // candidates are enumerated from the sorted values and then extended along
  // their diagonal.
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return s[a] < s[b]; });
  const double slack = radius + 4.0 * std::numeric_limits<double>::epsilon() *
                                    std::max(std::abs(s[order.front()]), std::abs(s[order.back()]));
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = order[a];
    const double v = s[i];
    for (std::size_t b = a + 1; b < n && s[order[b]] - v <= slack; ++b) {
      const std::size_t j = order[b];
      if (!(std::abs(v - s[j]) <= radius)) continue;
      const std::size_t reach = std::min(kmax, n - std::max(i, j));
      std::size_t len = 1;
      while (len < reach && std::abs(s[i + len] - s[j + len]) <= radius) ++len;
      for (std::size_t k = 1; k <= len; ++k) {
        ++out.counts[k - 1][i];
        ++out.counts[k - 1][j];
      }
    }
  }
  return out;
}

std::map<int, double> apen_profile(std::span<const double> samples, std::span<const int> ms,
                                   double r_factor) {
  const int max_m = checked_max_m(samples.size(), ms);
  const double radius = tolerance(samples, r_factor);
  const MatchCounts mc = template_match_counts(samples, radius, max_m + 1);
  const std::size_t n = samples.size();
  std::map<int, double> out;
  for (int m : ms) {
    const auto mu = static_cast<std::size_t>(m);
    const double phi_m = phi_from_counts(mc.counts[mu - 1], n - mu + 1);
    const double phi_m1 = phi_from_counts(mc.counts[mu], n - mu);
    out[m] = phi_m - phi_m1;
  }
  return out;
}

double apen(std::span<const double> samples, const EntropyParams& params) {
  const int ms[] = {params.m};
  return apen_profile(samples, ms, params.r_factor).at(params.m);
}

double apen(const Signal& signal, const EntropyParams& params) {
  return apen(signal.samples(), params);
}

std::map<int, double> fuzen_profile(std::span<const double> samples, std::span<const int> ms,
                                    const EntropyParams& params) {
  const int max_m = checked_max_m(samples.size(), ms);
  const double radius = tolerance(samples, params.r_factor);
  const FuzzySums sums = fuzzy_sums(samples, max_m + 1, params, radius);
  const std::size_t n = samples.size();

  std::map<int, double> out;
  for (int m : ms) {
    const auto mu = static_cast<std::size_t>(m);
    if (params.statistic == FuzzyStatistic::log_ratio) {
      const double phi_m = sums.truncated[mu - 1].value();
      const double phi_m1 = sums.full[mu].value();
      if (!(phi_m1 > 0.0) || !(phi_m > 0.0)) {
        throw Error(ErrorCode::no_matches,
                    "no similar templates of length " + std::to_string(m + 1) + "; FuzEn undefined");
      }
      out[m] = std::log(phi_m / phi_m1);
    } else {
      auto phi = [&](std::size_t k) {
        const std::size_t templates = n - k + 1;
        const auto denom = static_cast<double>(templates);
        CompensatedSum sum;
        for (std::size_t i = 0; i < templates; ++i) sum += std::log((1.0 + sums.rows[k - 1][i]) / denom);
        return sum.value() / denom;
      };
      out[m] = phi(mu) - phi(mu + 1);
    }
  }
  return out;
}

double fuzen(std::span<const double> samples, const EntropyParams& params) {
  const int ms[] = {params.m};
  return fuzen_profile(samples, ms, params).at(params.m);
}

double fuzen(const Signal& signal, const EntropyParams& params) {
  return fuzen(signal.samples(), params);
}

}  // namespace disentropy::metrics
