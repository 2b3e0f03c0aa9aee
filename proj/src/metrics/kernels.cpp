#include "kernels.hpp"

#include <algorithm>
#include <cmath>

#define DISENTROPY_CLONES __attribute__((target_clones("arch=skylake-avx512", "arch=haswell", "default")))

namespace disentropy::metrics::detail {
namespace {

constexpr std::size_t kBlock = 256;

DISENTROPY_CLONES
void heaviside(double si, const double* sj, double* out, std::size_t n, double radius) {
#pragma omp simd
  for (std::size_t t = 0; t < n; ++t) out[t] = std::abs(si - sj[t]) <= radius ? 1.0 : 0.0;
}

DISENTROPY_CLONES
void gaussian(double si, const double* sj, double* out, std::size_t n, double scale) {
#pragma omp simd
  for (std::size_t t = 0; t < n; ++t) {
    const double a = si - sj[t];
    out[t] = std::exp(-(a * a) * scale);
  }
}

// w = min(e, w_prev); col += w; returns sum of w.
DISENTROPY_CLONES
double fold(const double* e, const double* w_prev, double* w, double* col, std::size_t n) {
  double sum = 0.0;
#pragma omp simd reduction(+ : sum)
  for (std::size_t t = 0; t < n; ++t) {
    const double v = e[t] < w_prev[t] ? e[t] : w_prev[t];
    w[t] = v;
    col[t] += v;
    sum += v;
  }
  return sum;
}

DISENTROPY_CLONES
double seed_first(const double* e, double* w, double* col, std::size_t n) {
  double sum = 0.0;
#pragma omp simd reduction(+ : sum)
  for (std::size_t t = 0; t < n; ++t) {
    w[t] = e[t];
    col[t] += e[t];
    sum += e[t];
  }
  return sum;
}

DISENTROPY_CLONES
double fold_sum(const double* e, const double* w_prev, double* w, std::size_t n) {
  double sum = 0.0;
#pragma omp simd reduction(+ : sum)
  for (std::size_t t = 0; t < n; ++t) {
    const double v = e[t] < w_prev[t] ? e[t] : w_prev[t];
    w[t] = v;
    sum += v;
  }
  return sum;
}

DISENTROPY_CLONES
void fold_state(const double* e, const double* w_prev, double* w, std::size_t n) {
#pragma omp simd
  for (std::size_t t = 0; t < n; ++t) w[t] = e[t] < w_prev[t] ? e[t] : w_prev[t];
}

}  // namespace

PairSums pair_window_sums(std::span<const double> s, int max_len, const Grade& grade, bool columns) {
  const std::size_t n = s.size();
  const auto K = static_cast<std::size_t>(max_len);
  PairSums out;
  out.row.assign(K, std::vector<double>(n, 0.0));
  if (columns) out.col.assign(K, std::vector<double>(n, 0.0));

  auto fill = [&](double si, const double* sj, double* e, std::size_t len) {
    switch (grade.kind) {
      case Grade::Kind::heaviside: heaviside(si, sj, e, len, grade.radius); break;
      case Grade::Kind::gaussian: gaussian(si, sj, e, len, grade.scale); break;
      case Grade::Kind::custom:
        for (std::size_t t = 0; t < len; ++t) e[t] = grade.custom(std::abs(si - sj[t]));
        break;
    }
  };

  // state[k][d - d0] holds g_{k+1}(i + 1, i + 1 + d) while i descends; lanes
  // whose pair lies beyond the end are never written and stay zero.
  std::vector<std::vector<double>> state(K, std::vector<double>(kBlock));
  std::vector<double> e(kBlock);
  const double* x = s.data();

  for (std::size_t d0 = 1; d0 < n; d0 += kBlock) {
    for (std::size_t i0 = 0; i0 + d0 < n; i0 += kBlock) {
      const std::size_t i_end = std::min(i0 + kBlock, n - d0);
      for (auto& w : state) std::fill(w.begin(), w.end(), 0.0);
      // warm-up: windows starting in this block reach up to K - 1 rows below it
      const std::size_t top = std::min(i_end + K - 1, n - d0);
      for (std::size_t i = top; i-- > i0;) {
        const std::size_t lanes = std::min(kBlock, n - i - d0);
        fill(x[i], x + i + d0, e.data(), lanes);
        if (i >= i_end) {
          for (std::size_t k = K; k-- > 1;) fold_state(e.data(), state[k - 1].data(), state[k].data(), lanes);
          std::copy_n(e.begin(), lanes, state[0].begin());
          continue;
        }
        if (columns) {
          for (std::size_t k = K; k-- > 1;) {
            out.row[k][i] +=
                fold(e.data(), state[k - 1].data(), state[k].data(), out.col[k].data() + i + d0, lanes);
          }
          out.row[0][i] += seed_first(e.data(), state[0].data(), out.col[0].data() + i + d0, lanes);
        } else {
          for (std::size_t k = K; k-- > 1;) {
            out.row[k][i] += fold_sum(e.data(), state[k - 1].data(), state[k].data(), lanes);
          }
          std::copy_n(e.begin(), lanes, state[0].begin());
          double first = 0.0;
          for (std::size_t t = 0; t < lanes; ++t) first += e[t];
          out.row[0][i] += first;
        }
      }
    }
  }
  return out;
}

}  // namespace disentropy::metrics::detail
