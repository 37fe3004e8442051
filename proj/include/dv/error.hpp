#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dv {

enum class ErrorCode {
  invalid_params,
  overflow,
  nonfinite_input,
  negative_y,
  domain,
  no_convergence,
  precision_unreachable,
  missing_reference,
  unknown_selector,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_params: return "invalid-params";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::nonfinite_input: return "nonfinite-input";
    case ErrorCode::negative_y: return "negative-y";
    case ErrorCode::domain: return "domain";
    case ErrorCode::no_convergence: return "no-convergence";
    case ErrorCode::precision_unreachable: return "precision-unreachable";
    case ErrorCode::missing_reference: return "missing-reference";
    case ErrorCode::unknown_selector: return "unknown-selector";
  }
  return "unknown";
}

/// Exception thrown by every fallible operation in the library. The message
/// names the failing operation and, where there is one, the offending input.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dv
