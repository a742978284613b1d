#pragma once

#include <stdexcept>
#include <string>

namespace cosetlab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or block layouts do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument value was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exact enumeration would exceed its configured size budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A resolvent was requested at (or within tolerance of) a spectral point.
class SingularPoint : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed; the message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An experiment or command-line configuration is malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cosetlab
