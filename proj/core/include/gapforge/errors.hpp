#pragma once

#include <stdexcept>
#include <string>

namespace gapforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A request would exceed a configured sieve, scan or power budget.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An adaptive-precision evaluation could not certify a result at its cap.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// EXACT_INTEGER was requested for an inequality whose parameters are not rational.
class UnsupportedModeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class CheckpointError : public Error {
 public:
  using Error::Error;
};

}  // namespace gapforge
