#pragma once

#include <stdexcept>
#include <string>

namespace wfs {

enum class ErrorCode {
  NotALattice,
  CyclicCovers,
  OutOfRange,
  ParseError,
  MixedLattices,
  NotACover,
  NotElevating,
  NotAutomorphism,
  TooLarge,
  CapExceeded,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

  /// True for errors raised by size caps and budget guards.
  bool is_cap_violation() const {
    return code_ == ErrorCode::TooLarge || code_ == ErrorCode::CapExceeded;
  }

 private:
  ErrorCode code_;
};

}  // namespace wfs
