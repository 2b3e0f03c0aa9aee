#include "disentropy/cli/app.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "disentropy/cli/report.hpp"
#include "disentropy/cli/signal_io.hpp"
#include "disentropy/experiments/experiments.hpp"
#include "disentropy/experiments/io.hpp"
#include "disentropy/generators/generate.hpp"
#include "disentropy/metrics/nist.hpp"

namespace disentropy::cli {

namespace fs = std::filesystem;
using experiments::write_file_atomic;

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::io_error:
    case ErrorCode::file_parse_error: return kExitIo;
    default: return kExitConfig;
  }
}

namespace {

std::string default_out_dir(const std::string& fallback) {
  const char* env = std::getenv(kOutDirEnv);
  return env != nullptr && *env != '\0' ? std::string(env) : fallback;
}

void ensure_parent(const fs::path& path) {
  const fs::path parent = path.parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  fs::create_directories(parent, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot create directory '" + parent.string() + "': " + ec.message());
}

std::string join(const std::vector<std::string>& items, const char* sep = ", ") {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string preset;
  std::string lcg;
  std::optional<std::uint32_t> mt_seed;
  std::string file;
  std::size_t n = 10000;
  std::optional<std::uint64_t> seed;
  std::string normalize;
  bool binarize = false;
  double threshold = 0.5;
  std::optional<int> levels;
  double level_noise = 0.0;
  std::uint32_t noise_seed = 0;
  std::optional<std::size_t> line_period;
  std::size_t line_start = 0;
  double line_value = 0.0;
  std::optional<double> line_slope;
  std::string output;
};

generators::LcgParams parse_lcg(const std::string& text) {
  std::vector<std::uint64_t> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      parts.push_back(std::stoull(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::config_error, "--lcg expects M,a,c,x0 as integers, got '" + text + "'");
    }
  }
  if (parts.size() != 4) throw Error(ErrorCode::config_error, "--lcg expects M,a,c,x0, got '" + text + "'");
  generators::LcgParams p{parts[0], parts[1], parts[2], parts[3]};
  p.validate();
  return p;
}

generators::GeneratorSpec generator_spec(const GenerateArgs& a) {
  const int sources = !a.preset.empty() + !a.lcg.empty() + a.mt_seed.has_value() + !a.file.empty();
  if (sources != 1) {
    throw Error(ErrorCode::config_error, "choose exactly one source: --preset, --lcg, --mt-seed or --file");
  }
  generators::GeneratorSpec spec;
  if (!a.preset.empty()) {
    spec = generators::preset(a.preset, a.n);
  } else if (!a.lcg.empty()) {
    spec.source = generators::LcgSource{parse_lcg(a.lcg)};
    spec.name = "lcg";
  } else if (a.mt_seed) {
    spec.source = generators::MtSeedSource{*a.mt_seed};
    spec.name = "mt19937";
  } else {
    spec.source = generators::FileSource{a.file, generators::FileFormat::automatic};
    spec.normalize = generators::Normalization::minmax;
    spec.name = fs::path(a.file).stem().string();
  }
  spec.length = a.n;
  if (a.seed) {
    if (auto* lcg = std::get_if<generators::LcgSource>(&spec.source)) {
      lcg->params.seed = *a.seed;
      lcg->params.validate();
    } else if (auto* mt = std::get_if<generators::MtSeedSource>(&spec.source)) {
      if (*a.seed > 0xFFFFFFFFULL) throw Error(ErrorCode::config_error, "MT19937 seeds must fit in 32 bits");
      mt->seed = static_cast<std::uint32_t>(*a.seed);
    } else {
      throw Error(ErrorCode::config_error, "--seed does not apply to file sources");
    }
  }
  if (!a.normalize.empty()) spec.normalize = generators::parse_normalization(a.normalize);
  if (a.line_period) {
    generators::LineInjection inj;
    inj.period = *a.line_period;
    inj.start = a.line_start;
    inj.start_value = a.line_value;
    inj.slope = a.line_slope;
    spec.transforms.emplace_back(inj);
  }
  if (a.levels) spec.transforms.emplace_back(generators::QuantizeStep{*a.levels, a.level_noise, a.noise_seed});
  if (a.binarize) spec.transforms.emplace_back(generators::BinarizeStep{a.threshold});
  return spec;
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  const generators::GeneratorSpec spec = generator_spec(a);
  const Signal signal = generators::generate(spec);
  const std::string name = spec.name.empty() ? "signal" : spec.name;
  fs::path path = a.output.empty() ? fs::path(default_out_dir(".")) / (name + ".txt") : fs::path(a.output);
  ensure_parent(path);
  write_file_atomic(path.string(), format_signal(signal));
  const auto& meta = signal.meta();
  auto get = [&](const char* key) {
    auto it = meta.find(key);
    return it == meta.end() ? std::string("-") : it->second;
  };
  out << "generated " << name << ": source=" << get("source") << " seed=" << get("seed") << " N=" << signal.size()
      << " normalization=" << get("normalization") << " domain=" << to_string(signal.domain()) << " -> "
      << path.string() << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string input;
  std::vector<int> m_list{2, 3};
  std::string domain = "auto";
  std::string format = "json";
  std::string output;
  double r_apen = metrics::kApEnRFactor;
  double r_fuzen = metrics::kFuzEnRFactor;
  std::string membership = "gaussian";
  std::string statistic = "log_ratio";
  bool remove_baseline = false;
  bool no_disentropy = false;
  bool no_apen = false;
  bool no_fuzen = false;
  bool no_pvalue = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  if (a.format != "json" && a.format != "csv") throw Error(ErrorCode::config_error, "--format must be json or csv");
  Signal signal = read_signal_file(a.input);
  if (a.domain != "auto") signal = signal.with_domain(parse_domain(a.domain));
  for (int m : a.m_list) {
    if (m < 1) throw Error(ErrorCode::config_error, "embedding dimensions must be >= 1");
  }
  if (signal.domain().kind == DomainKind::binary) {
    const int bound = metrics::nist_max_embedding(signal.size());
    for (int m : a.m_list) {
      if (m > bound) {
        throw Error(ErrorCode::config_error,
                    "refusing m = " + std::to_string(m) + " for a binary signal of N = " + std::to_string(signal.size()) +
                        ": the approximate entropy bound is m <= floor(log2 N) - 5 = " + std::to_string(bound));
      }
    }
  }
  metrics::AnalyzeOptions opt;
  opt.apen.r_factor = a.r_apen;
  opt.fuzen.r_factor = a.r_fuzen;
  opt.fuzen.membership = metrics::Membership::parse(a.membership);
  if (a.statistic == "log_ratio") opt.fuzen.statistic = metrics::FuzzyStatistic::log_ratio;
  else if (a.statistic == "phi_difference") opt.fuzen.statistic = metrics::FuzzyStatistic::phi_difference;
  else throw Error(ErrorCode::config_error, "--statistic must be log_ratio or phi_difference");
  opt.fuzen.remove_baseline = a.remove_baseline;
  opt.disentropy = !a.no_disentropy;
  opt.approximate_entropy = !a.no_apen;
  opt.fuzzy_entropy = !a.no_fuzen;
  opt.pvalue = !a.no_pvalue;
  if (!(opt.apen.r_factor > 0.0) || !(opt.fuzen.r_factor > 0.0)) {
    throw Error(ErrorCode::config_error, "tolerance factors must be positive");
  }

  const metrics::MetricReport report = metrics::analyze(signal, a.m_list, opt);
  std::vector<std::string> warnings;
  for (const auto& f : report.failures) {
    warnings.push_back(f.metric + (f.m ? "[m=" + std::to_string(*f.m) + "]" : "") + " failed: " + f.message);
  }
  const std::string text = a.format == "json" ? metric_report_json(report, warnings) : metric_report_csv(report);
  if (a.output.empty()) {
    out << text;
  } else {
    ensure_parent(a.output);
    write_file_atomic(a.output, text);
    out << "wrote " << a.output << " (" << report.value_count() << " values)\n";
  }
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  if (report.value_count() == 0) {
    err << "error: every metric failed\n";
    return kExitAllFailed;
  }
  return kExitOk;
}

// -------------------------------------------------------------- experiment

struct ExperimentArgs {
  std::string name;
  std::string out_dir;
  unsigned threads = 0;
  std::vector<int> m_list;
  std::optional<std::size_t> n;
  std::optional<std::size_t> instances;
  std::optional<std::size_t> responses;
  std::vector<std::size_t> n_resp;
  std::optional<std::size_t> per_response;
  std::optional<std::uint32_t> seed;
  std::vector<std::string> files;
  std::optional<std::size_t> shams;
  std::optional<double> multiplier;
  std::string preset;
  bool progress = false;
};

void apply_overrides(experiments::ExperimentSpec& spec, const ExperimentArgs& a) {
  using namespace experiments;
  std::vector<std::string> unused;
  auto take = [&](bool given, const char* flag, auto&& apply) {
    if (!given) return;
    if (!apply()) unused.push_back(flag);
  };
  std::visit(
      [&](auto& s) {
        using T = std::decay_t<decltype(s)>;
        take(!a.m_list.empty(), "--m", [&] {
          if constexpr (std::is_same_v<T, ConvergenceSpec> || std::is_same_v<T, MultilevelSpec>) {
            if (a.m_list.size() != 1) throw Error(ErrorCode::config_error, "this experiment takes a single --m");
            s.m = a.m_list.front();
            return true;
          } else if constexpr (requires { s.m_list; }) {
            s.m_list = a.m_list;
            return true;
          }
          return false;
        });
        take(a.n.has_value(), "--n", [&] {
          if constexpr (requires { s.n; }) {
            s.n = *a.n;
            return true;
          }
          return false;
        });
        take(!a.preset.empty(), "--preset", [&] {
          if constexpr (requires { s.preset; }) {
            s.preset = a.preset;
            return true;
          }
          return false;
        });
        take(a.instances.has_value(), "--instances", [&] {
          if constexpr (requires { s.puf; }) {
            s.puf.n_instances = *a.instances;
            return true;
          }
          return false;
        });
        take(a.responses.has_value(), "--responses", [&] {
          if constexpr (std::is_same_v<T, PufDynamicsSpec>) {
            s.puf.n_responses = *a.responses;
            return true;
          }
          return false;
        });
        take(!a.n_resp.empty(), "--n-resp", [&] {
          if constexpr (std::is_same_v<T, PufPrefixSpec>) {
            s.n_resp_grid = a.n_resp;
            return true;
          }
          return false;
        });
        take(a.per_response.has_value(), "--per-response", [&] {
          if constexpr (std::is_same_v<T, PufDynamicsSpec>) {
            s.per_response = *a.per_response;
            return true;
          }
          return false;
        });
        take(a.seed.has_value(), "--seed", [&] {
          if constexpr (requires { s.puf; }) {
            s.puf.seed = *a.seed;
            return true;
          } else if constexpr (std::is_same_v<T, MultilevelSpec>) {
            s.noise_seed = *a.seed;
            return true;
          } else if constexpr (std::is_same_v<T, LineScanSpec>) {
            s.sham_seed = *a.seed;
            return true;
          }
          return false;
        });
        take(!a.files.empty(), "--files", [&] {
          if constexpr (std::is_same_v<T, TrngSpec>) {
            s.files = a.files;
            return true;
          }
          return false;
        });
        take(a.shams.has_value(), "--shams", [&] {
          if constexpr (std::is_same_v<T, LineScanSpec>) {
            s.shams = *a.shams;
            return true;
          }
          return false;
        });
        take(a.multiplier.has_value(), "--multiplier", [&] {
          if constexpr (std::is_same_v<T, LineScanSpec>) {
            s.multiplier = *a.multiplier;
            return true;
          }
          return false;
        });
      },
      spec);
  if (!unused.empty()) {
    throw Error(ErrorCode::config_error,
                "option(s) " + join(unused) + " do not apply to experiment '" + experiment_name(spec) + "'");
  }
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string values_text(const experiments::Row& row) {
  std::string out;
  for (const auto& [k, v] : row.values) out += " " + k + "=" + short_number(v);
  return out;
}

/// One-screen overview: summary rows, or the first rows when there is no summary.
void print_summary(const experiments::ExperimentResult& r, std::ostream& out) {
  out << r.experiment << ": " << r.rows.size() << " cells, spec " << r.provenance.spec_hash << "\n";
  const auto& rows = r.summary.empty() ? r.rows : r.summary;
  const std::size_t limit = 40;
  for (std::size_t i = 0; i < rows.size() && i < limit; ++i) {
    out << "  " << rows[i].id << ":" << values_text(rows[i]);
    if (!rows[i].errors.empty()) out << "  [" << rows[i].errors.size() << " error(s)]";
    out << "\n";
  }
  if (rows.size() > limit) out << "  ... " << rows.size() - limit << " more rows in the CSV\n";
  std::size_t passed = 0;
  for (const auto& c : r.checks) {
    passed += c.passed ? 1 : 0;
    out << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
  }
  if (!r.checks.empty()) out << "  checks: " << passed << "/" << r.checks.size() << " passed\n";
}

int cmd_experiment(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  experiments::ExperimentSpec spec = experiments::default_spec(a.name);
  apply_overrides(spec, a);
  const fs::path dir = a.out_dir.empty() ? fs::path(default_out_dir("results")) : fs::path(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot create output directory '" + dir.string() + "': " + ec.message());

  experiments::RunOptions opts;
  opts.threads = a.threads;
  if (a.progress) {
    opts.progress = [&err](std::size_t done, std::size_t total) {
      err << "\r" << done << "/" << total << " cells" << (done == total ? "\n" : "") << std::flush;
    };
  }
  const experiments::ExperimentResult result = experiments::run(spec, opts);
  const std::string stem = (dir / result.experiment).string();
  write_file_atomic(stem + ".json", experiments::to_json(result));
  write_file_atomic(stem + ".csv", experiments::to_csv(result));
  write_file_atomic(stem + ".plot.csv", experiments::to_plot_csv(result));
  print_summary(result, out);
  out << "wrote " << stem << ".json, .csv, .plot.csv\n";
  for (const auto& w : result.warnings) err << "warning: " << w << "\n";
  const std::size_t errors = result.error_count();
  if (errors + result.warnings.size() > 0) {
    err << "warning: " << errors << " cell error(s), " << result.warnings.size() << " warning(s)\n";
  }
  bool any_value = false;
  for (const auto& row : result.rows) any_value = any_value || !row.values.empty();
  if (!any_value) {
    err << "error: no cell produced a value\n";
    return kExitAllFailed;
  }
  return kExitOk;
}

// ------------------------------------------------------------------ report

int cmd_report(const std::string& input, std::ostream& out) {
  using json = nlohmann::ordered_json;
  json doc;
  try {
    doc = json::parse(read_text_file(input));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::file_parse_error, input + ": not valid JSON: " + e.what());
  }
  if (!doc.is_object() || doc.value("schema", 0) != 1) {
    throw Error(ErrorCode::file_parse_error, input + ": not a schema 1 report");
  }
  auto value_text = [](const json& v) { return v.is_number() ? short_number(v.get<double>()) : v.dump(); };
  if (doc.value("kind", "") == "metric_report") {
    out << "metric report: N=" << doc["n_samples"] << " domain=" << doc["domain"].get<std::string>()
        << " tool=" << doc["tool_version"].get<std::string>() << "\n";
    const json& scores = doc["scores"];
    if (scores["disentropy"].is_object()) {
      out << "  disentropy: " << value_text(scores["disentropy"]["score"]) << " (D2 = "
          << value_text(scores["disentropy"]["d2"]) << ")\n";
    }
    for (const char* metric : {"apen", "fuzen", "apen_pvalue"}) {
      for (const auto& [m, v] : scores[metric].items()) out << "  " << metric << "[m=" << m << "]: " << value_text(v) << "\n";
    }
    for (const auto& f : doc["failures"]) {
      out << "  failed " << f["metric"].get<std::string>() << ": " << f["error"].get<std::string>() << ": "
          << f["message"].get<std::string>() << "\n";
    }
    return kExitOk;
  }
  if (!doc.contains("experiment")) throw Error(ErrorCode::file_parse_error, input + ": unknown report kind");
  experiments::ExperimentResult r;
  r.experiment = doc["experiment"].get<std::string>();
  r.provenance.spec_hash = doc.value("spec_hash", "");
  auto rows = [&](const json& list) {
    std::vector<experiments::Row> out_rows;
    for (const auto& item : list) {
      experiments::Row row;
      row.id = item.value("id", "");
      for (const auto& [k, v] : item["values"].items()) row.set(k, v.is_number() ? v.get<double>() : std::nan(""));
      for (const auto& e : item["errors"]) row.error(e.get<std::string>());
      out_rows.push_back(std::move(row));
    }
    return out_rows;
  };
  r.rows = rows(doc["rows"]);
  r.summary = rows(doc["summary"]);
  for (const auto& c : doc["checks"]) {
    r.checks.push_back({c["name"].get<std::string>(), c["passed"].get<bool>(), c["detail"].get<std::string>()});
  }
  print_summary(r, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Disentropy, approximate entropy and fuzzy entropy of security-primitive signals", "disentropy"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DISENTROPY_VERSION);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a generated signal file");
  g->add_option("--preset", gen.preset, "Named generator: " + join(generators::preset_names()));
  g->add_option("--lcg", gen.lcg, "Inline LCG parameters M,a,c,x0");
  g->add_option("--mt-seed", gen.mt_seed, "MT19937 seed");
  g->add_option("--file", gen.file, "TRNG integer dump to ingest");
  g->add_option("--n", gen.n, "Number of samples")->capture_default_str();
  g->add_option("--seed", gen.seed, "Seed override (MT seed or LCG x0)");
  g->add_option("--normalize", gen.normalize, "by_modulus, minmax or none");
  g->add_flag("--binarize", gen.binarize, "Comparator output in {0, 1}");
  g->add_option("--threshold", gen.threshold, "Comparator threshold")->capture_default_str();
  g->add_option("--levels", gen.levels, "Quantize to 2..10 equispaced levels");
  g->add_option("--level-noise", gen.level_noise, "Gaussian noise sigma added after quantization");
  g->add_option("--noise-seed", gen.noise_seed, "Seed of the level noise");
  g->add_option("--line-period", gen.line_period, "Inject a diagonal line with this period");
  g->add_option("--line-start", gen.line_start, "First injected index");
  g->add_option("--line-value", gen.line_value, "Value of the first injected sample");
  g->add_option("--line-slope", gen.line_slope, "Ramp increment per occurrence");
  g->add_option("-o,--output", gen.output, "Output path (default $" + std::string(kOutDirEnv) + "/<name>.txt)");

  AnalyzeArgs an;
  auto* a = app.add_subcommand("analyze", "Score a signal file");
  a->add_option("input", an.input, "Signal file")->required();
  a->add_option("--m", an.m_list, "Embedding dimensions")->delimiter(',')->capture_default_str();
  a->add_option("--domain", an.domain, "auto, analog, binary or multilevel:L")->capture_default_str();
  a->add_option("--format", an.format, "json or csv")->capture_default_str();
  a->add_option("-o,--output", an.output, "Report path (default: standard output)");
  a->add_option("--r-apen", an.r_apen, "ApEn tolerance factor")->capture_default_str();
  a->add_option("--r-fuzen", an.r_fuzen, "FuzEn tolerance factor")->capture_default_str();
  a->add_option("--membership", an.membership, "gaussian, exponential[:power], triangular, z_shaped, constant_gaussian")
      ->capture_default_str();
  a->add_option("--statistic", an.statistic, "log_ratio or phi_difference")->capture_default_str();
  a->add_flag("--remove-baseline", an.remove_baseline, "Subtract template means in FuzEn");
  a->add_flag("--no-disentropy", an.no_disentropy);
  a->add_flag("--no-apen", an.no_apen);
  a->add_flag("--no-fuzen", an.no_fuzen);
  a->add_flag("--no-pvalue", an.no_pvalue);

  ExperimentArgs ex;
  auto* e = app.add_subcommand("experiment", "Run a named experiment");
  e->add_option("name", ex.name, "One of: " + join(experiments::registry_names()))->required();
  e->add_option("--out-dir", ex.out_dir, "Output directory (default $" + std::string(kOutDirEnv) + " or ./results)");
  e->add_option("--threads", ex.threads, "Worker threads (0: all cores)");
  e->add_option("--m", ex.m_list, "Embedding dimensions")->delimiter(',');
  e->add_option("--n", ex.n, "Signal length");
  e->add_option("--preset", ex.preset, "Base generator preset");
  e->add_option("--instances", ex.instances, "PUF instances per fleet");
  e->add_option("--responses", ex.responses, "Responses per PUF instance");
  e->add_option("--n-resp", ex.n_resp, "Responses per instance grid")->delimiter(',');
  e->add_option("--per-response", ex.per_response, "Responses scored one by one (0 disables)");
  e->add_option("--seed", ex.seed, "Base seed (PUF fleet, level noise or sham injections)");
  e->add_option("--files", ex.files, "TRNG integer dumps")->delimiter(',');
  e->add_option("--shams", ex.shams, "Null-model injections per period");
  e->add_option("--multiplier", ex.multiplier, "Detection threshold in sham standard deviations");
  e->add_flag("--progress", ex.progress, "Report finished cells on standard error");

  std::string report_input;
  auto* r = app.add_subcommand("report", "Print an overview of a JSON report");
  r->add_option("input", report_input, "Experiment or metric report JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& h) {
    return app.exit(h, out, err);
  } catch (const CLI::CallForVersion& v) {
    return app.exit(v, out, err);
  } catch (const CLI::ParseError& pe) {
    app.exit(pe, out, err);
    return kExitConfig;
  }

  try {
    if (g->parsed()) return cmd_generate(gen, out);
    if (a->parsed()) return cmd_analyze(an, out, err);
    if (e->parsed()) return cmd_experiment(ex, out, err);
    if (r->parsed()) return cmd_report(report_input, out);
  } catch (const Error& x) {
    err << "error: " << to_string(x.code()) << ": " << x.what() << "\n";
    return exit_code_for(x.code());
  } catch (const std::exception& x) {
    err << "error: " << x.what() << "\n";
    return kExitIo;
  }
  return kExitConfig;
}

}  // namespace disentropy::cli
