#pragma once

#include <stdexcept>
#include <string>

namespace colltherm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad dimension, negative rate, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An iterative or numerical procedure failed to converge, or a computed
/// quantity is singular.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A requested Hilbert-space dimension exceeds the configured maximum.
class ResourceGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace colltherm
