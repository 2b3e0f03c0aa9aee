#include <doctest.h>

#include <cmath>
#include <random>

#include "disentropy/error.hpp"
#include "disentropy/metrics/entropy.hpp"
#include "oracles.hpp"

using namespace disentropy;
using namespace disentropy::metrics;

namespace {
ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::invalid_argument;
}

std::vector<double> binary_signal(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> s(n);
  for (auto& v : s) v = static_cast<double>(rng() & 1U);
  return s;
}
}  // namespace

TEST_CASE("template match counts equal the naive count") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 10 + rng() % 150;
    auto s = oracle::random_signal(rng, n);
    if (trial % 3 == 0) {
      for (auto& v : s) v = std::round(v * 4.0) / 4.0;  // many exact ties
    }
    const double r = 0.2 * oracle::stddev(s);
    const auto mc = template_match_counts(s, r, 5);
    for (int k = 1; k <= 5; ++k) {
      CHECK(mc.counts[k - 1] == oracle::match_counts(s, r, k));
    }
  }
}

TEST_CASE("apen matches the naive implementation") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 20 + rng() % 180;
    const auto s = oracle::random_signal(rng, n);
    for (int m : {1, 2, 3}) {
      CHECK(std::abs(apen(s, EntropyParams::apen_defaults(m)) - oracle::apen(s, m, 0.2)) < 1e-12);
    }
  }
}

TEST_CASE("fuzen matches the naive implementation for every mode") {
  std::mt19937_64 rng(3);
  const Membership memberships[] = {
      {MembershipKind::gaussian},      {MembershipKind::exponential, 1.5}, {MembershipKind::triangular},
      {MembershipKind::z_shaped},      {MembershipKind::constant_gaussian}};
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 30 + rng() % 120;
    const auto s = oracle::random_signal(rng, n);
    for (const auto& mf : memberships) {
      for (bool baseline : {false, true}) {
        for (auto stat : {FuzzyStatistic::log_ratio, FuzzyStatistic::phi_difference}) {
          for (int m : {1, 2, 3}) {
            EntropyParams p = EntropyParams::fuzen_defaults(m);
            p.membership = mf;
            p.remove_baseline = baseline;
            p.statistic = stat;
            // triangular / z-shaped memberships need a wider radius to keep matches
            if (mf.kind == MembershipKind::triangular || mf.kind == MembershipKind::z_shaped) p.r_factor = 1.0;
            CHECK(std::abs(fuzen(s, p) - oracle::fuzen(s, p)) < 1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("profiles agree with single evaluations") {
  std::mt19937_64 rng(4);
  const auto s = oracle::random_signal(rng, 400);
  const int ms[] = {1, 2, 3, 5};
  const auto ap = apen_profile(s, ms);
  const auto fz = fuzen_profile(s, ms, EntropyParams::fuzen_defaults(2));
  for (int m : ms) {
    CHECK(ap.at(m) == apen(s, EntropyParams::apen_defaults(m)));
    CHECK(fz.at(m) == fuzen(s, EntropyParams::fuzen_defaults(m)));
  }
}

TEST_CASE("entropy errors") {
  CHECK(code_of([] { (void)apen(std::vector<double>(50, 1.0), EntropyParams::apen_defaults(2)); }) ==
        ErrorCode::zero_variance);
  CHECK(code_of([] { (void)fuzen(std::vector<double>(50, 1.0), EntropyParams::fuzen_defaults(2)); }) ==
        ErrorCode::zero_variance);
  CHECK(code_of([] { (void)apen(std::vector<double>{0.1, 0.5, 0.2}, EntropyParams::apen_defaults(2)); }) ==
        ErrorCode::too_short);
  CHECK(code_of([] { (void)fuzen(std::vector<double>{0.1, 0.5, 0.2}, EntropyParams::fuzen_defaults(2)); }) ==
        ErrorCode::too_short);
  CHECK(code_of([] { (void)apen(std::vector<double>{0.1, 0.5, 0.2, 0.9}, EntropyParams::apen_defaults(0)); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([] { (void)apen_profile(std::vector<double>{0.1, 0.5, 0.2, 0.9}, {}); }) ==
        ErrorCode::invalid_argument);
  EntropyParams bad = EntropyParams::apen_defaults(2);
  bad.r_factor = 0.0;
  CHECK(code_of([&] { (void)apen(std::vector<double>{0.1, 0.5, 0.2, 0.9}, bad); }) == ErrorCode::invalid_argument);
}

TEST_CASE("binary ceiling") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = binary_signal(rng, 50 + rng() % 2000);
    for (int m : {1, 2, 3, 4}) {
      CHECK(apen(s, EntropyParams::apen_defaults(m)) <= std::log(2.0) + 1e-9);
    }
  }
}

TEST_CASE("entropies are non-negative up to the finite-size bias") {
  // With self-matches, phi^m - phi^{m+1} >= -ln(n)/n - ln(n/(n-1)) for n = N - m.
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 10 + rng() % 300;
    auto s = oracle::random_signal(rng, n);
    if (trial % 2 == 0) {
      for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<double>(i % 7);
      s[0] += 1e-3;
    }
    for (int m : {1, 2, 3}) {
      const double t = static_cast<double>(n - m);
      const double bound = -std::log(t) / t - std::log(t / (t - 1.0));
      CHECK(apen(s, EntropyParams::apen_defaults(m)) >= bound - 1e-12);
      CHECK(fuzen(s, EntropyParams::fuzen_defaults(m)) >= -1e-12);
    }
  }
}

TEST_CASE("entropies are affine invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = oracle::random_signal(rng, 300);
    for (double a : {-2.0, 0.5, 3.0}) {
      for (double b : {-1.0, 0.0, 7.0}) {
        std::vector<double> t(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) t[i] = a * s[i] + b;
        for (int m : {2, 3}) {
          CHECK(std::abs(apen(t, EntropyParams::apen_defaults(m)) - apen(s, EntropyParams::apen_defaults(m))) < 1e-9);
          CHECK(std::abs(fuzen(t, EntropyParams::fuzen_defaults(m)) - fuzen(s, EntropyParams::fuzen_defaults(m))) <
                1e-9);
        }
      }
    }
  }
}

TEST_CASE("membership functions") {
  for (const char* name : {"gaussian", "exponential", "exponential:3", "triangular", "z_shaped", "constant_gaussian"}) {
    const Membership mf = Membership::parse(name);
    CHECK(mf(0.0, 1.0) == 1.0);
    double prev = 1.0;
    for (int i = 1; i <= 40; ++i) {
      const double g = mf(i * 0.1, 1.0);
      CHECK(g <= prev);
      CHECK(g >= 0.0);
      prev = g;
    }
    CHECK_FALSE(mf.describe().empty());
  }
  CHECK(Membership::parse("exponential:3").power == 3.0);
  CHECK(Membership::parse("gaussian")(1.0, 1.0) == doctest::Approx(std::exp(-0.5)));
  CHECK(Membership::parse("z_shaped")(0.75, 1.0) == doctest::Approx(0.125));
  CHECK_THROWS_AS(Membership::parse("bell"), Error);
  CHECK_THROWS_AS(Membership::parse("exponential:-1"), Error);
}
