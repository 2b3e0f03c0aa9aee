#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace disentropy {

/// Failure categories shared by every module. The CLI maps these to exit codes
/// and reports embed the lower_snake_case name.
enum class ErrorCode {
  invalid_argument,
  non_finite,
  zero_variance,
  domain_error,
  degenerate_q,
  singular_input,
  singular_autocorrelation,
  too_short,
  no_matches,
  not_binary,
  embedding_too_large,
  file_parse_error,
  insufficient_samples,
  level_out_of_range,
  config_error,
  empty_list,
  mixed_domain,
  io_error,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace disentropy
