#include <doctest.h>

#include "disentropy/error.hpp"
#include "disentropy/generators/mt.hpp"
#include "disentropy/generators/puf.hpp"

using namespace disentropy;
using namespace disentropy::generators;

TEST_CASE("dynamics rule") {
  std::vector<double> r{0.95, 0.5, 0.05, 0.3, 0.5};
  apply_dynamics(r, {});
  CHECK(r == std::vector<double>{0.95, 0.1, 0.05, 0.9, 0.5});

  // a forced value does not itself trigger the rule
  std::vector<double> chain{0.95, 0.05, 0.5};
  apply_dynamics(chain, {});
  CHECK(chain == std::vector<double>{0.95, 0.1, 0.9});
}

TEST_CASE("dynamics post-condition on every response") {
  PufConfig ref;
  ref.n_instances = 3;
  ref.n_responses = 50;
  PufConfig dyn = ref;
  dyn.defect = PufDefect::dynamics;
  std::size_t triggers = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < ref.n_instances; ++i) {
    const auto raw = puf_instance_responses(ref, i);
    const auto test = puf_instance_responses(dyn, i);
    REQUIRE(raw.size() == test.size());
    for (std::size_t r = 0; r < raw.size(); ++r) {
      CHECK(test[r][0] == raw[r][0]);
      for (std::size_t k = 1; k < raw[r].size(); ++k) {
        ++total;
        if (raw[r][k - 1] >= 0.9) {
          CHECK(test[r][k] == 0.1);
          ++triggers;
        } else if (raw[r][k - 1] <= 0.1) {
          CHECK(test[r][k] == 0.9);
          ++triggers;
        } else {
          CHECK(test[r][k] == raw[r][k]);
        }
      }
    }
  }
  // each trigger has probability 0.1 on uniform input
  CHECK(static_cast<double>(triggers) / total == doctest::Approx(0.2).epsilon(0.1));
}

TEST_CASE("fleets share draws and are reproducible") {
  PufConfig cfg;
  cfg.n_instances = 2;
  cfg.n_responses = 3;
  const auto a = puf_responses(cfg);
  const auto b = puf_responses(cfg);
  REQUIRE(a.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t r = 0; r < 3; ++r) {
      CHECK(std::equal(a[i][r].samples().begin(), a[i][r].samples().end(), b[i][r].samples().begin()));
    }
  }
  MtSource mt(cfg.seed + 1);
  CHECK(a[1][0][0] == mt.next_double());
  CHECK(a[0][0][0] != a[1][0][0]);
}

TEST_CASE("fixed prefix and fixed sample") {
  PufConfig cfg;
  cfg.n_instances = 1;
  cfg.n_responses = 100;
  cfg.defect = PufDefect::fixed_prefix;
  const auto resp = puf_instance_responses(cfg, 0);
  const Signal c = concatenate(resp);
  CHECK(c.size() == 12800);
  for (std::size_t i = 0; i < c.size(); i += 128) {
    CHECK(c[i] == 0.2);
    CHECK(c[i + 1] == 0.1);
  }
  cfg.defect = PufDefect::fixed_sample;
  cfg.sample_index = 5;
  for (const auto& r : puf_instance_responses(cfg, 0)) CHECK(r[5] == 0.5);

  cfg.defect = PufDefect::fixed_prefix;
  cfg.prefix.assign(128, 0.1);
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.prefix = {1.5};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.response_len = 1;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("concatenate") {
  PufConfig cfg;
  cfg.n_instances = 1;
  cfg.n_responses = 500;
  const auto resp = puf_instance_responses(cfg, 0);
  CHECK(concatenate(resp).size() == 64000);
  const Signal one = concatenate(std::span(resp.data(), 1));
  CHECK(std::equal(one.samples().begin(), one.samples().end(), resp[0].samples().begin()));
  CHECK(concatenate(std::span(resp.data(), 3)).meta().at("responses") == "0,1,2");

  try {
    (void)concatenate(std::span<const Signal>{});
    FAIL("empty list accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_list);
  }
  const Signal parts[] = {Signal({0.0, 1.0}, Domain::binary()), Signal({0.3, 0.4})};
  try {
    (void)concatenate(parts);
    FAIL("mixed domains accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::mixed_domain);
  }
}
