#pragma once

#include <stdexcept>
#include <string>

namespace maxarity {

enum class ErrorCode {
  parse,
  dimension_mismatch,
  invalid_argument,
  non_generic,
  internal_verification,
};

// Every failure raised by the library carries one of the codes above; the CLI
// maps them onto process exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require_dimension(std::size_t got, std::size_t want,
                              const char* where) {
  if (got != want) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(where) + ": dimension " + std::to_string(got) +
                    " does not match " + std::to_string(want));
  }
}

}  // namespace maxarity
