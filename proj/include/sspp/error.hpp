#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sspp {

enum class ErrorCode {
  invalid_argument,   // bad parameter or configuration value
  parse,              // malformed input file or option string
  domain,             // point outside the observation window
  degenerate,         // too few points or otherwise unusable data
  estimation,         // likelihood maximisation or bootstrap failed
  simulation_stall,   // accept-reject exceeded its rejection budget
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Process exit status used by the command line tool.
int exit_status(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sspp
