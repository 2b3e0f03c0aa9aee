#include <doctest.h>

#include <cmath>
#include <limits>

#include "disentropy/error.hpp"
#include "disentropy/signal.hpp"

using namespace disentropy;

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
}  // namespace

TEST_CASE("signal validates its invariants") {
  CHECK_NOTHROW(Signal({0.1, 0.2}));
  CHECK(code_of([] { Signal({0.5}); }) == ErrorCode::insufficient_samples);
  CHECK(code_of([] { Signal({0.5, std::nan("")}); }) == ErrorCode::non_finite);
  CHECK(code_of([] { Signal({0.5, std::numeric_limits<double>::infinity()}); }) == ErrorCode::non_finite);
  CHECK(code_of([] { Signal({0.0, 0.5}, Domain::binary()); }) == ErrorCode::not_binary);
  CHECK_NOTHROW(Signal({0.0, 1.0, 1.0}, Domain::binary()));
  CHECK(code_of([] { Signal({0.0, 1.0}, Domain::multilevel(1)); }) == ErrorCode::level_out_of_range);
}

TEST_CASE("domain text round-trip") {
  for (const Domain& d : {Domain::analog(), Domain::binary(), Domain::multilevel(7)}) {
    CHECK(parse_domain(to_string(d)) == d);
  }
  CHECK(to_string(Domain::multilevel(4)) == "multilevel:4");
  CHECK_THROWS_AS(parse_domain("ternary"), Error);
}

TEST_CASE("moments") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(sample_mean(v) == doctest::Approx(2.5));
  CHECK(population_variance(v) == doctest::Approx(1.25));
  CHECK(sample_stddev(v) == doctest::Approx(std::sqrt(5.0 / 3.0)));
}

TEST_CASE("error codes have stable names") {
  CHECK(to_string(ErrorCode::zero_variance) == "zero_variance");
  CHECK(to_string(ErrorCode::embedding_too_large) == "embedding_too_large");
}
