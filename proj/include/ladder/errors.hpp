#pragma once

#include <stdexcept>
#include <string>

namespace ladder {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Invalid or inconsistent input: bad physics values, malformed config,
/// missing waists when an off-axis evaluation is requested.
class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

/// The operation is not defined for this ladder (wrong number of steps).
class UnsupportedSchemeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
  const char* kind() const noexcept override { return "unsupported_scheme"; }
};

/// Numerical failure: division by a vanishing coupling, no peak found,
/// integrator step underflow.
class NumericalError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "numerical"; }
};

/// An analytic formula was asked for outside its range of validity.
class ValidityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "validity"; }
};

}  // namespace ladder
