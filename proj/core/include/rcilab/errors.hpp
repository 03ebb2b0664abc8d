// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace rcilab {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments, malformed configs, out-of-range parameters. CLI exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Numeric / domain failures. CLI exit code 2.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Closed form evaluated outside its domain (negative radicand, xi = 0, ...).
class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Linear system has no solution (regularized Gram matrix not invertible).
class SingularMatrixError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Structurally degenerate input, e.g. Hhat = 0 at tau = 1 (gamma = 0).
class DegenerateInputError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Filesystem / stream failures. CLI exit code 3.
class IoError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumeric = 2;
inline constexpr int kExitIo = 3;

}  // namespace rcilab
