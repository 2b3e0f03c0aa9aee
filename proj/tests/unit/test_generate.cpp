#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "disentropy/error.hpp"
#include "disentropy/generators/generate.hpp"
#include "disentropy/generators/mt.hpp"

using namespace disentropy;
using namespace disentropy::generators;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("disentropy_test_" + name);
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

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

TEST_CASE("generation is deterministic") {
  for (const auto& name : preset_names()) {
    const Signal a = generate(preset(name, 2000));
    const Signal b = generate(preset(name, 2000));
    CHECK(std::equal(a.samples().begin(), a.samples().end(), b.samples().begin()));
    CHECK(a.meta().at("generator") == name);
  }
  const Signal mt = generate(preset("mt0", 3));
  MtSource ref(0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(mt[i] == ref.next_double());
  CHECK(generate(preset("mts", 3)).meta().at("seed") == "1773456103");
}

TEST_CASE("unknown preset lists the valid names") {
  try {
    (void)preset("nosuch");
    FAIL("unknown preset accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::config_error);
    const std::string msg = e.what();
    for (const auto& n : preset_names()) CHECK(msg.find(n) != std::string::npos);
  }
}

TEST_CASE("transform pipeline") {
  GeneratorSpec spec = preset("mt0", 1000);
  spec.transforms.push_back(BinarizeStep{});
  const Signal b = generate(spec);
  CHECK(b.domain() == Domain::binary());

  spec.transforms = {QuantizeStep{5, 0.0, 1}};
  CHECK(generate(spec).domain() == Domain::multilevel(5));

  LineInjection inj;
  inj.period = 4;
  spec.transforms = {inj};
  CHECK(generate(spec)[4] == doctest::Approx(1.0 / 249.0));

  spec.length = 1;
  CHECK(code_of([&] { (void)generate(spec); }) == ErrorCode::insufficient_samples);
}

TEST_CASE("normalization choices") {
  GeneratorSpec spec = preset("lcg-bad", 600);
  spec.normalize = Normalization::none;
  const Signal raw = generate(spec);
  CHECK(raw[1] == 273.0);
  spec.normalize = Normalization::minmax;
  const Signal mm = generate(spec);
  double lo = 1.0;
  double hi = 0.0;
  for (double v : mm.samples()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo == 0.0);
  CHECK(hi == 1.0);
  CHECK(parse_normalization("minmax") == Normalization::minmax);
  CHECK_THROWS_AS(parse_normalization("zscore"), Error);
}

TEST_CASE("TRNG file ingestion") {
  const auto plain = temp_file("plain.txt", "5\n1\n\n9\r\n3\n");
  const Signal s = ingest_trng_file(plain.string());
  CHECK(s.size() == 4);
  CHECK(s[0] == 0.5);
  CHECK(s[1] == 0.0);
  CHECK(s[2] == 1.0);
  CHECK(s[3] == 0.25);
  CHECK(s.meta().at("count") == "4");
  CHECK(s.meta().at("file_hash").rfind("fnv1a64:", 0) == 0);
  CHECK(s.meta().at("raw_max") == "9");

  const auto csv = temp_file("values.csv", "value\n10\n20\n30\n");
  const Signal c = ingest_trng_file(csv.string());
  CHECK(c.size() == 3);
  CHECK(c[1] == 0.5);
  CHECK(ingest_trng_file(csv.string(), FileFormat::csv).size() == 3);
  CHECK(code_of([&] { (void)ingest_trng_file(plain.string(), FileFormat::csv); }) == ErrorCode::file_parse_error);

  const auto bad = temp_file("bad.txt", "1\n2\n3.5\n4\n");
  try {
    (void)ingest_trng_file(bad.string());
    FAIL("non-integer accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::file_parse_error);
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  const auto tiny = temp_file("tiny.txt", "42\n");
  CHECK(code_of([&] { (void)ingest_trng_file(tiny.string()); }) == ErrorCode::insufficient_samples);
  CHECK(code_of([&] { (void)ingest_trng_file("/nonexistent/trng.txt"); }) == ErrorCode::io_error);

  GeneratorSpec from_file;
  from_file.source = FileSource{plain.string()};
  from_file.length = 3;
  CHECK(generate(from_file).size() == 3);
  from_file.length = 10;
  CHECK(code_of([&] { (void)generate(from_file); }) == ErrorCode::insufficient_samples);

  for (const auto& p : {plain, csv, bad, tiny}) std::filesystem::remove(p);
}
