#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

#include "disentropy/error.hpp"
#include "disentropy/experiments/experiments.hpp"
#include "disentropy/experiments/io.hpp"
#include "disentropy/experiments/parallel.hpp"
#include "disentropy/generators/mt.hpp"

using namespace disentropy;
using namespace disentropy::experiments;
namespace fs = std::filesystem;

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

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("disentropy_exp_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_integers(const fs::path& path, std::uint32_t seed, std::size_t count) {
  generators::MtSource src(seed);
  std::ofstream out(path);
  for (std::size_t i = 0; i < count; ++i) out << (src.next_u32() % 1000000U) << "\n";
  return path.string();
}

}  // namespace

TEST_CASE("rows keep column order and overwrite in place") {
  Row r;
  r.set("b", 1.0).set("a", 2.0).set("b", 3.0);
  REQUIRE(r.values.size() == 2);
  CHECK(r.values[0].first == "b");
  CHECK(r.at("b") == 3.0);
  CHECK_FALSE(r.get("c").has_value());
  CHECK(code_of([&] { (void)r.at("c"); }) == ErrorCode::config_error);
}

TEST_CASE("csv quoting follows RFC 4180") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");

  ExperimentResult res;
  res.experiment = "demo";
  Row row;
  row.id = "x,1";
  row.label("preset", "mt0").set("v", 0.1).error("bad \"thing\"");
  res.rows.push_back(row);
  const std::string csv = to_csv(res);
  CHECK(csv.rfind("section,id,preset,v,errors\r\n", 0) == 0);
  CHECK(csv.find("row,\"x,1\",mt0,0.1,\"bad \"\"thing\"\"\"\r\n") != std::string::npos);
}

TEST_CASE("doubles format to the shortest round-trip form") {
  for (double v : {0.1, 1.0 / 3.0, 2.5e-300, -7.0, 123456789.125}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("result json is versioned and maps non-finite numbers to null") {
  ExperimentResult res;
  res.experiment = "demo";
  res.provenance.spec_json = R"({"experiment":"demo"})";
  Row row;
  row.id = "r";
  row.set("x", std::nan("")).set("y", 2.0);
  res.rows.push_back(row);
  res.checks.push_back({"claim", true, "ok"});
  const auto doc = nlohmann::ordered_json::parse(to_json(res));
  CHECK(doc["schema"] == 1);
  CHECK(doc["rows"][0]["values"]["x"].is_null());
  CHECK(doc["rows"][0]["values"]["y"] == 2.0);
  CHECK(doc["checks"][0]["passed"] == true);
  CHECK(doc.begin().key() == "schema");
}

TEST_CASE("parallel_map keeps index order and rethrows") {
  for (unsigned threads : {1U, 2U, 4U}) {
    const auto out = parallel_map(100, threads, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == i * i);
  }
  CHECK_THROWS_AS(parallel_map(10, 3,
                               [](std::size_t i) {
                                 if (i == 7) throw std::runtime_error("boom");
                                 return i;
                               }),
                  std::runtime_error);
}

TEST_CASE("atomic writes replace the target and leave no temporary") {
  const fs::path dir = scratch_dir("atomic");
  const std::string path = (dir / "out.txt").string();
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text == "second");
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 1);
  CHECK(code_of([&] { write_file_atomic((dir / "missing" / "x.txt").string(), "y"); }) == ErrorCode::io_error);
}

TEST_CASE("line fit and relative-difference conventions") {
  const LinearFit fit = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.r2 == doctest::Approx(1.0));
  CHECK(code_of([] { fit_line({1, 1}, {2, 3}); }) == ErrorCode::invalid_argument);

  CHECK(relative_difference(2.0, 3.0) == doctest::Approx(0.5));
  CHECK(relative_difference(-2.0, -1.0) == doctest::Approx(0.5));
  // Zero only when the delta is below 1% and below the relative sd.
  CHECK(displayed_difference(0.005, 0.01) == 0.0);
  CHECK(displayed_difference(-0.005, 0.01) == 0.0);
  CHECK(displayed_difference(0.005, 0.001) == 0.005);
  CHECK(displayed_difference(0.02, 0.5) == 0.02);
}

TEST_CASE("registry resolves every name and rejects unknown ones") {
  for (const auto& name : registry_names()) CHECK(experiment_name(default_spec(name)) == name);
  try {
    default_spec("nosuch");
    FAIL("expected config_error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::config_error);
    CHECK(std::string(e.what()).find("line-scan") != std::string::npos);
  }
}

TEST_CASE("experiments are pure functions of their spec") {
  DisentropyVsNSpec spec;
  spec.n_grid = {100, 200, 300, 400, 500, 600, 700, 800, 900, 1000, 1100, 1200};
  spec.fit_min = 600;
  spec.fit_max = 1200;
  RunOptions one;
  one.threads = 1;
  RunOptions many;
  many.threads = 3;
  const auto a = run_disentropy_vs_n(spec, one);
  const auto b = run_disentropy_vs_n(spec, many);
  CHECK(to_json(a) == to_json(b));
  CHECK(to_csv(a) == to_csv(b));
  CHECK(a.provenance.spec_hash.rfind("fnv1a64:", 0) == 0);
  CHECK(a.provenance.seeds == std::vector<std::uint32_t>{1});
  spec.probe_n = 300;
  CHECK(run_disentropy_vs_n(spec, one).provenance.spec_hash != a.provenance.spec_hash);
}

TEST_CASE("convergence with a single grid point has no tail statistics") {
  ConvergenceSpec spec;
  spec.n_grid = {100};
  const auto r = run_convergence(spec);
  CHECK(r.rows.size() == 1);
  CHECK(r.summary.empty());
  CHECK_FALSE(r.warnings.empty());
  CHECK(r.rows[0].get("apen_m2").has_value());
  spec.n_grid = {200, 100};
  CHECK(code_of([&] { run_convergence(spec); }) == ErrorCode::config_error);
}

TEST_CASE("prng ratios equal cell over baseline") {
  PrngCompareSpec spec;
  spec.n = 1500;
  spec.m_list = {2};
  const auto r = run_prng_compare(spec);
  const Row* base = r.find_row("mt0");
  REQUIRE(base != nullptr);
  for (const auto& row : r.rows) {
    for (const char* col : {"disentropy", "apen_m2", "fuzen_m2"}) {
      REQUIRE(row.get(col).has_value());
      CHECK(std::abs(row.at(std::string(col) + "_ratio") - row.at(col) / base->at(col)) <= 1e-12);
    }
  }
  CHECK(base->at("disentropy_ratio") == 1.0);
  CHECK(r.find_summary("separation lcg1 disentropy") != nullptr);
}

TEST_CASE("binary comparison enforces the embedding bound") {
  PrngCompareSpec spec = PrngCompareSpec::binary();
  spec.m_list = {9};
  CHECK(code_of([&] { run_prng_compare(spec); }) == ErrorCode::config_error);
}

TEST_CASE("m-sweep with one preset and one m is a one-row table") {
  MSweepSpec spec;
  spec.presets = {"mt0"};
  spec.m_list = {2};
  spec.n = 1000;
  const auto r = run_m_sweep(spec);
  CHECK(r.rows.size() == 1);
  CHECK(r.checks.empty());
}

TEST_CASE("disentropy of an aperiodic MT stream stays near zero") {
  DisentropyVsNSpec spec;
  spec.preset = "mt0";
  spec.n_grid = {1000, 2000, 3000, 4000};
  spec.fit_min = 1000;
  spec.fit_max = 4000;
  const auto r = run_disentropy_vs_n(spec);
  for (const auto& row : r.rows) CHECK(row.at("disentropy") < 1e-2);
}

TEST_CASE("multilevel cells carry levels and sigma") {
  MultilevelSpec spec;
  spec.n = 1000;
  spec.levels = {2, 4};
  spec.sigmas = {0.0, 0.05};
  const auto r = run_multilevel(spec);
  CHECK(r.rows.size() == 4);
  CHECK(r.find_row("levels=4 sigma=0.05") != nullptr);
  spec.levels = {11};
  CHECK(code_of([&] { run_multilevel(spec); }) == ErrorCode::config_error);
}

TEST_CASE("line scan detects a full-signal ramp") {
  LineScanSpec spec;
  spec.n = 1500;
  spec.m_list = {2};
  spec.entropy_periods = {1};
  spec.disentropy_periods = {1, 300};
  spec.shams = 4;
  const auto r = run_line_scan(spec);
  const Row* d1 = r.find_row("disentropy p_line=1");
  REQUIRE(d1 != nullptr);
  CHECK(d1->at("detected") == 1.0);
  CHECK(d1->at("shams") == 4.0);
  CHECK(r.find_row("apen_m2 p_line=1") != nullptr);
  CHECK(r.find_row("apen_m2 p_line=300") == nullptr);
  spec.shams = 1;
  CHECK(code_of([&] { run_line_scan(spec); }) == ErrorCode::config_error);
}

TEST_CASE("puf studies report ratio-of-means deltas") {
  PufDynamicsSpec spec;
  spec.puf.n_instances = 3;
  spec.puf.n_responses = 10;
  spec.per_response = 20;
  spec.m_list = {1};
  const auto r = run_puf_dynamics(spec);
  const Row* d = r.find_summary("concatenation disentropy");
  REQUIRE(d != nullptr);
  double ref = 0.0, test = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Row* row = r.find_row("concatenation instance " + std::to_string(i));
    REQUIRE(row != nullptr);
    ref += row->at("ref_disentropy") / 3.0;
    test += row->at("test_disentropy") / 3.0;
  }
  CHECK(d->at("rel_diff") == doctest::Approx((test - ref) / ref).epsilon(1e-12));
  CHECK(r.find_summary("per-response apen_m1") != nullptr);
  CHECK(r.provenance.seeds == std::vector<std::uint32_t>{1, 2, 3});

  PufPrefixSpec prefix;
  prefix.puf.n_instances = 2;
  prefix.n_resp_grid = {5, 10};
  prefix.sample.n_responses = 5;
  prefix.m_list = {1};
  const auto p = run_puf_fixed_prefix(prefix);
  CHECK(p.find_summary("N_resp=10 fuzen_m1") != nullptr);
  CHECK(p.find_summary("fixed-sample N_resp=5 disentropy") != nullptr);
}

TEST_CASE("trng comparison flags missing files and single-file sd") {
  const fs::path dir = scratch_dir("trng");
  TrngSpec spec;
  spec.files = {write_integers(dir / "a.txt", 11, 10000), (dir / "missing.txt").string()};
  spec.m_list = {2};
  const auto r = run_trng_compare(spec);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].errors.empty());
  REQUIRE(r.rows[1].errors.size() == 1);
  CHECK(r.rows[1].errors[0].find("io_error") != std::string::npos);
  const Row* mean = r.find_summary("mean apen_m2");
  REQUIRE(mean != nullptr);
  CHECK(std::isnan(mean->at("sd")));
  CHECK(mean->label_of("sd").has_value());

  spec.files = {write_integers(dir / "short.txt", 12, 500)};
  const auto s = run_trng_compare(spec);
  CHECK(s.rows[0].errors.at(0).find("insufficient_samples") != std::string::npos);
  spec.files.clear();
  CHECK(code_of([&] { run_trng_compare(spec); }) == ErrorCode::config_error);
}
