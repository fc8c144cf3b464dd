#pragma once

#include <stdexcept>
#include <string>

namespace snm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data or arguments violate a documented invariant. The CLI maps
/// this family to exit status 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed file content. `what()` carries the element or line context.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A node for which an operation is undefined (e.g. gain of an isolated node).
class DegenerateNodeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// File system failures. Exit status 3.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace snm
