#pragma once

#include <stdexcept>
#include <string>

namespace threegap {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enclosure of alpha could not be made narrow enough to decide a sign.
/// Only reachable with a decimal-literal alpha or past the hard bit cap.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// Bad user input: malformed files, hypotheses of the gap bound not met.
class InputError : public Error {
 public:
  using Error::Error;
};

class ConfigParseError : public InputError {
 public:
  using InputError::InputError;
};

/// A named validation failure (e.g. "zero slope").
class ValidationError : public InputError {
 public:
  ValidationError(std::string code, const std::string& message)
      : InputError(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class ZeroSlopePiece : public InputError {
 public:
  using InputError::InputError;
};

class BreakpointHit : public InputError {
 public:
  using InputError::InputError;
};

/// Something the mathematics guarantees did not happen. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace threegap
