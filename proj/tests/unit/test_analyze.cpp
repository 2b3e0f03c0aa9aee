#include <doctest.h>

#include <random>

#include "disentropy/error.hpp"
#include "disentropy/metrics/analyze.hpp"
#include "disentropy/metrics/disentropy.hpp"
#include "oracles.hpp"

using namespace disentropy;
using namespace disentropy::metrics;

TEST_CASE("analyze computes every metric") {
  std::mt19937_64 rng(1);
  const Signal s(oracle::random_signal(rng, 500), Domain::analog(), {{"generator", "test"}});
  const int ms[] = {3, 2, 2};
  const auto report = analyze(s, ms);
  CHECK(report.failures.empty());
  CHECK(report.m_list == std::vector<int>{2, 3});
  REQUIRE(report.disentropy_score);
  CHECK(*report.disentropy_score == disentropy_of(s).score);
  CHECK(report.apen.at(2) == apen(s, EntropyParams::apen_defaults(2)));
  CHECK(report.fuzen.at(3) == fuzen(s, EntropyParams::fuzen_defaults(3)));
  CHECK(report.apen_pvalue.empty());
  CHECK(report.signal_meta.at("generator") == "test");
  CHECK(report.value_count() == 5);
}

TEST_CASE("binary signals receive p-values and per-m refusals") {
  std::mt19937_64 rng(2);
  std::vector<double> v(10000);
  for (auto& b : v) b = static_cast<double>(rng() & 1U);
  const Signal s(v, Domain::binary());
  const int ms[] = {2, 9};
  const auto report = analyze(s, ms);
  CHECK(report.apen_pvalue.count(2) == 1);
  CHECK(report.apen_pvalue.count(9) == 0);
  REQUIRE(report.failures.size() == 1);
  CHECK(report.failures[0].metric == "apen_pvalue");
  CHECK(report.failures[0].m == 9);
  CHECK(report.failures[0].code == ErrorCode::embedding_too_large);
  CHECK(report.apen.count(9) == 1);
}

TEST_CASE("failures are labeled without aborting") {
  const Signal constant(std::vector<double>(100, 0.5));
  const int ms[] = {2, 3};
  const auto report = analyze(constant, ms);
  CHECK(report.value_count() == 0);
  CHECK(report.failures.size() == 5);
  for (const auto& f : report.failures) CHECK(f.code == ErrorCode::zero_variance);

  std::mt19937_64 rng(3);
  const Signal short_signal(oracle::random_signal(rng, 6));
  const int wide[] = {2, 5};
  const auto partial = analyze(short_signal, wide);
  CHECK(partial.apen.count(2) == 1);
  CHECK(partial.apen.count(5) == 0);
  CHECK(partial.disentropy_score.has_value());
}

TEST_CASE("empty m_list is an argument error") {
  std::mt19937_64 rng(4);
  const Signal s(oracle::random_signal(rng, 50));
  try {
    (void)analyze(s, {});
    FAIL("empty list accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
  }
}
