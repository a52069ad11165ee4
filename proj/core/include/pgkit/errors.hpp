#pragma once

#include <stdexcept>

namespace pgkit {

// Precondition violations are reported with std::invalid_argument and
// arithmetic domain errors with std::domain_error. The types below cover
// failures that are not caller mistakes.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration cannot be satisfied (e.g. no primitive polynomial found).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A requested structure exceeds the configured size bound.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or a breakdown in an iterative method.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A generated schedule violated one of its invariants.
class ScheduleError : public Error {
 public:
  using Error::Error;
};

}  // namespace pgkit
