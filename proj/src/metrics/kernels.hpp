#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

// Pairwise template kernel shared by ApEn and FuzEn. It lives in its own
// translation unit, compiled for auto-vectorization with AVX2 clones.
namespace disentropy::metrics::detail {

/// Grade of one element pair as a function of |s_i - s_j|; must be
/// non-increasing so that the grade of a window is the minimum over its
/// elements.
struct Grade {
  enum class Kind { heaviside, gaussian, custom } kind = Kind::heaviside;
  double radius = 0.0;  // heaviside: |a| <= radius -> 1
  double scale = 0.0;   // gaussian: exp(-a^2 * scale)
  std::function<double(double)> custom;
};

/// For every pair i < j and window length k = 1..max_len whose window fits
/// (j + k <= n), g_k(i, j) = min_{t<k} grade(|s_{i+t} - s_{j+t}|) is added to
/// row[k-1][i] and, when requested, col[k-1][j]. Arrays hold n entries.
struct PairSums {
  std::vector<std::vector<double>> row;
  std::vector<std::vector<double>> col;
};

PairSums pair_window_sums(std::span<const double> s, int max_len, const Grade& grade, bool columns = true);

}  // namespace disentropy::metrics::detail
