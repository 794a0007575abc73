#pragma once

#include <stdexcept>
#include <string>

namespace iprob {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector lengths or outcome spaces do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A documented precondition was violated by the caller.
class DomainError : public Error {
 public:
  using Error::Error;
};

// NaN/inf encountered, or an iterative method failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Two computations that must agree did not.
class ConsistencyError : public NumericError {
 public:
  using NumericError::NumericError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace iprob
