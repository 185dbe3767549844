#include "sspp/error.hpp"

namespace sspp {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "INVALID_ARGUMENT";
    case ErrorCode::parse: return "PARSE_ERROR";
    case ErrorCode::domain: return "DOMAIN_ERROR";
    case ErrorCode::degenerate: return "DEGENERATE_INPUT";
    case ErrorCode::estimation: return "ESTIMATION_ERROR";
    case ErrorCode::simulation_stall: return "SIMULATION_STALL";
  }
  return "UNKNOWN";
}

int exit_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument:
    case ErrorCode::parse:
      return 2;
    case ErrorCode::domain:
    case ErrorCode::degenerate:
    case ErrorCode::estimation:
      return 3;
    case ErrorCode::simulation_stall:
      return 4;
  }
  return 1;
}

}  // namespace sspp
