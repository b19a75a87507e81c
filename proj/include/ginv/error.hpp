#pragma once

#include <stdexcept>
#include <string>

namespace ginv {

// Numeric values are the CLI exit codes and the C API status codes.
enum class ErrorCode : int {
  property_failure = 1,
  inconsistent = 2,
  precondition = 3,
  rank_ambiguity = 4,
  invalid_argument = 5,
  parse = 6,
  internal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace ginv
