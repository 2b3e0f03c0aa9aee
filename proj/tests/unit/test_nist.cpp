#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>
#include <string>

#include "disentropy/error.hpp"
#include "disentropy/metrics/nist.hpp"

using namespace disentropy;
using namespace disentropy::metrics;

namespace {
std::vector<double> bits_of(const std::string& text) {
  std::vector<double> out;
  for (char c : text) {
    if (c == '0' || c == '1') out.push_back(c == '1' ? 1.0 : 0.0);
  }
  return out;
}

double pvalue_of(const std::vector<double>& bits, int m) {
  const double n = static_cast<double>(bits.size());
  const double chi2 = 2.0 * n * (std::log(2.0) - nist_apen_statistic(bits, m));
  return igamc(std::ldexp(1.0, m - 1), chi2 / 2.0);
}
}  // namespace

TEST_CASE("igamc agrees with boost gamma_q") {
  for (double a : {0.5, 1.0, 2.0, 4.0, 8.0, 32.0, 64.0, 128.0, 512.0}) {
    for (double x : {1e-3, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 64.0, 100.0, 127.0, 300.0, 600.0}) {
      const double ref = boost::math::gamma_q(a, x);
      const double got = igamc(a, x);
      CHECK(std::abs(got - ref) <= 1e-10 * std::max(ref, 1e-300) + 1e-300);
    }
  }
  CHECK(igamc(3.0, 0.0) == 1.0);
  CHECK_THROWS_AS(igamc(0.0, 1.0), Error);
  CHECK_THROWS_AS(igamc(1.0, -1.0), Error);
}

TEST_CASE("reference examples of the NIST suite") {
  // Worked examples of the approximate entropy test description.
  CHECK(std::abs(pvalue_of(bits_of("0100110101"), 3) - 0.261961) < 1e-6);
  const auto pi_bits = bits_of(
      "1100100100001111110110101010001000100001011010001100001000110100110001001100011001100010100010111000");
  REQUIRE(pi_bits.size() == 100);
  CHECK(std::abs(nist_apen_statistic(pi_bits, 2) - 0.665393) < 1e-6);
  CHECK(std::abs(pvalue_of(pi_bits, 2) - 0.235301) < 1e-6);
}

TEST_CASE("embedding bound") {
  CHECK(nist_max_embedding(10000) == 8);
  CHECK(nist_max_embedding(1024) == 5);
  CHECK(nist_max_embedding(1023) == 4);

  std::mt19937 rng(1);
  std::vector<double> v(10000);
  for (auto& b : v) b = static_cast<double>(rng() & 1U);
  const Signal bin(v, Domain::binary());
  CHECK_NOTHROW(apen_nist_pvalue(bin, 8));
  try {
    (void)apen_nist_pvalue(bin, 9);
    FAIL("m = 9 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::embedding_too_large);
    CHECK(std::string(e.what()).find("floor(log2 N) - 5") != std::string::npos);
  }
  try {
    (void)apen_nist_pvalue(Signal(v), 2);
    FAIL("analog accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_binary);
  }
}

TEST_CASE("p-values lie in [0, 1]") {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(2048);
    const unsigned period = 1 + trial;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = trial % 2 == 0 ? (rng() & 1U) : ((i / period) % 2);
    const Signal bin(v, Domain::binary());
    for (int m = 1; m <= 6; ++m) {
      const double p = apen_nist_pvalue(bin, m);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
}
