#include <doctest.h>

#include <cmath>
#include <random>

#include "disentropy/error.hpp"
#include "disentropy/metrics/autocorrelation.hpp"
#include "disentropy/metrics/disentropy.hpp"
#include "oracles.hpp"

using namespace disentropy;
using namespace disentropy::metrics;

TEST_CASE("autocorrelation errors") {
  try {
    (void)autocorrelation(std::vector<double>(100, 0.5));
    FAIL("constant accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::zero_variance);
  }
  CHECK_THROWS_AS(autocorrelation(std::vector<double>{0.1, std::nan("")}), Error);
}

TEST_CASE("alternating sequence") {
  std::vector<double> s(1000);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = i % 2 == 0 ? 1.0 : -1.0;
  for (auto method : {AutocorrMethod::direct, AutocorrMethod::fft}) {
    const auto r = autocorrelation(s, method);
    CHECK(r.n_samples() == 1000);
    CHECK(r[0] == 1.0);
    CHECK(std::abs(r[1] + 0.999) < 1e-12);
    CHECK(std::abs(r[2] - 0.998) < 1e-12);
  }
}

TEST_CASE("direct and FFT paths agree with the definition") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 300;
    const auto s = oracle::random_signal(rng, n);
    const auto ref = oracle::autocorrelation(s);
    const auto direct = autocorrelation(s, AutocorrMethod::direct);
    const auto fft = autocorrelation(s, AutocorrMethod::fft);
    REQUIRE(direct.values.size() == n);
    REQUIRE(fft.values.size() == n);
    CHECK(direct[0] == 1.0);
    CHECK(fft[0] == 1.0);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(direct[k] - ref[k]) < 1e-12);
      CHECK(std::abs(fft[k] - ref[k]) < 1e-9);
      CHECK(std::abs(direct[k]) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("automatic method switches to FFT above the threshold") {
  std::mt19937_64 rng(3);
  const auto s = oracle::random_signal(rng, 3000);
  const auto a = autocorrelation(s);
  const auto d = autocorrelation(s, AutocorrMethod::direct);
  for (std::size_t k = 0; k < s.size(); ++k) CHECK(std::abs(a[k] - d[k]) < 1e-9);
}

TEST_CASE("disentropy closed values") {
  AutocorrSeries ideal;
  ideal.values.assign(500, 0.0);
  ideal.values[0] = 1.0;
  CHECK(metrics::disentropy(ideal) == 0.5);

  AutocorrSeries pair;
  pair.values = {1.0, 0.5};
  CHECK(std::abs(metrics::disentropy(pair) - (0.5 + 0.125 / 1.5)) < 1e-15);

  AutocorrSeries singular;
  singular.values = {1.0, 0.2, -1.0};
  try {
    (void)metrics::disentropy(singular);
    FAIL("r = -1 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular_autocorrelation);
    CHECK(std::string(e.what()).find("r_2") != std::string::npos);
  }
}

TEST_CASE("disentropy score is affine invariant") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = oracle::random_signal(rng, 1500);
    const double base = disentropy_of(s).score;
    CHECK(base >= 0.0);
    for (double a : {-2.0, 0.5, 3.0}) {
      for (double b : {-1.0, 0.0, 7.0}) {
        std::vector<double> t(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) t[i] = a * s[i] + b;
        CHECK(std::abs(disentropy_of(t).score - base) < 1e-9);
      }
    }
  }
}
