#pragma once

#include <stdexcept>
#include <string>

namespace plantfit {

// Base for every error thrown by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration, bad parameter values, bad command-line usage.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Parameter or bound validation failure; a kind of configuration error.
class ValidationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Malformed, inconsistent or incomplete input series.
class DataError : public Error {
 public:
  using Error::Error;
};

// Unit commitment or search failure.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace plantfit
