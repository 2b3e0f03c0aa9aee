#include "disentropy/cli/signal_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "disentropy/error.hpp"
#include "disentropy/hash.hpp"

namespace disentropy::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool is_reserved(const std::string& key) { return key == "domain" || key == "n" || key == "format"; }

}  // namespace

std::string format_signal(const Signal& signal) {
  std::string out = "# format: disentropy-signal 1\n";
  out += "# domain: " + to_string(signal.domain()) + "\n";
  out += "# n: " + std::to_string(signal.size()) + "\n";
  for (const auto& [k, v] : signal.meta()) {
    if (is_reserved(k) || k.find_first_of(":\n") != std::string::npos || v.find('\n') != std::string::npos) continue;
    out += "# " + k + ": " + v + "\n";
  }
  char buf[40];
  for (double v : signal.samples()) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out += buf;
  }
  return out;
}

Signal parse_signal(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  Domain domain = Domain::analog();
  Metadata meta;
  std::vector<double> values;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::file_parse_error, origin + ":" + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const std::string body = trim(std::string_view(t).substr(1));
      const auto colon = body.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = trim(std::string_view(body).substr(0, colon));
      const std::string value = trim(std::string_view(body).substr(colon + 1));
      if (key == "domain") {
        try {
          domain = parse_domain(value);
        } catch (const Error& e) {
          fail(e.what());
        }
      } else if (!is_reserved(key)) {
        meta[key] = value;
      }
      continue;
    }
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0' || errno == ERANGE) fail("'" + t + "' is not a number");
    values.push_back(v);
  }
  if (values.size() < 2) {
    throw Error(ErrorCode::insufficient_samples,
                origin + ": " + std::to_string(values.size()) + " samples; at least 2 are required");
  }
  try {
    return Signal(std::move(values), domain, std::move(meta));
  } catch (const Error& e) {
    throw Error(e.code(), origin + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::io_error, "read error on '" + path + "'");
  return buf.str();
}

Signal read_signal_file(const std::string& path) {
  const std::string text = read_text_file(path);
  Signal s = parse_signal(text, path);
  s.meta()["path"] = path;
  s.meta()["file_hash"] = "fnv1a64:" + fnv1a64_hex(text);
  return s;
}

}  // namespace disentropy::cli
