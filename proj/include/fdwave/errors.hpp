#pragma once

#include <stdexcept>
#include <string>

namespace fdwave {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Non-finite or otherwise malformed input data.
class InvalidInput : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_input"; }
};

/// Grid too coarse for the requested truncation order.
class TruncationError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "truncation"; }
};

/// Coefficients do not describe a real-valued field.
class RealityError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "reality"; }
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "dimension_mismatch"; }
};

/// An operation's precondition does not hold (range, admissibility, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition"; }
};

class ConvergenceError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "convergence"; }
};

/// Malformed or inconsistent configuration / input file.
class ConfigError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

/// A numerical self-check (split, oracle comparison, ...) did not hold.
class CheckFailure : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "check_failure"; }
};

}  // namespace fdwave
