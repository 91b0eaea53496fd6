#pragma once

#include <stdexcept>
#include <string>

namespace tdpert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands with incompatible shapes or ambient dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Textual or JSON input that cannot be decoded.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The system is not sharp, so split-sequence quantities are undefined.
class NotSharpError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A structural fact that must hold for a tridiagonal system was violated.
/// Raised when an exact check contradicts a proven statement.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Predicted and observed tridiagonal-pair verdicts disagree.
class TheoremMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace tdpert
