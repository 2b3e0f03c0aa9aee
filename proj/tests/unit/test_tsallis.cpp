#include <doctest.h>

#include <cmath>

#include "disentropy/error.hpp"
#include "disentropy/metrics/tsallis.hpp"

using namespace disentropy;
using namespace disentropy::metrics;

TEST_CASE("q_log") {
  CHECK(q_log(1.0, 2.0) == 0.0);
  CHECK(q_log(2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(q_log(std::exp(1.0), 1.0 + 1e-9) - 1.0) < 1e-6);
  CHECK(std::abs(q_log(std::exp(1.0), 1.0 - 1e-6) - 1.0) < 1e-6);
  CHECK(std::abs(q_log(std::exp(1.0), 1.0 + 1e-6) - 1.0) < 1e-6);
  CHECK_THROWS_AS(q_log(0.0, 2.0), Error);
  CHECK_THROWS_AS(q_log(-1.0, 2.0), Error);
  try {
    (void)q_log(2.0, 1.0);
    FAIL("q = 1 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_q);
  }
}

TEST_CASE("q_exp") {
  CHECK(q_exp(0.0, 2.0) == 1.0);
  CHECK(q_exp(-2.0, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(std::abs(q_exp(q_log(3.0, 2.0), 2.0) - 3.0) < 1e-12);
  for (double q : {0.5, 1.5, 2.0, 3.0}) {
    for (double x : {0.1, 0.7, 2.0, 5.0}) {
      CHECK(std::abs(q_exp(q_log(x, q), q) - x) < 1e-12 * x);
    }
  }
  // 1 + (1 - q) x < 0
  try {
    (void)q_exp(2.0, 2.0);
    FAIL("outside domain accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain_error);
  }
}

TEST_CASE("w2") {
  CHECK(w2(0.0) == 0.0);
  CHECK(w2(1.0) == 0.5);
  try {
    (void)w2(-1.0);
    FAIL("z = -1 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular_input);
  }
  CHECK_THROWS_AS(w2(-2.0), Error);
}

TEST_CASE("w2 satisfies its defining relation") {
  for (int i = 0; i <= 2000; ++i) {
    const double z = -0.999 + (10.0 + 0.999) * i / 2000.0;
    const double w = w2(z);
    CHECK(std::abs(w * q_exp(w, 2.0) - z) <= 1e-12 * std::max(1.0, std::abs(z)));
  }
}
