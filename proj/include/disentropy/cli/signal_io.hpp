#pragma once

#include <string>

#include "disentropy/signal.hpp"

namespace disentropy::cli {

/// Text format: '#'-prefixed header lines ("# key: value"), then one sample
/// per line with 17 significant digits. The header carries the domain and
/// the signal metadata.
std::string format_signal(const Signal& signal);

/// Parses the text format. A "# domain:" header sets the domain; without it
/// the signal is analog. Throws file_parse_error naming `origin` and the line.
Signal parse_signal(const std::string& text, const std::string& origin = "<memory>");

/// Reads a signal file; throws io_error when it cannot be opened. The
/// metadata gains "path" and "file_hash".
Signal read_signal_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace disentropy::cli
