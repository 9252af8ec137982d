#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace swdiag {

enum class ErrorCode {
  invalid_network,
  invalid_fault,
  arity,
  resource,
  precondition,
  range,
  structure,
  parse,
  io,
};

/// Stable short tag used as the prefix of CLI diagnostics.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace swdiag
