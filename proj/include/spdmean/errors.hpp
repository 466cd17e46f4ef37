#pragma once

#include <stdexcept>
#include <string>

namespace spdmean {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite or otherwise malformed numeric input.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Operands whose dimensions do not agree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A matrix that was required to be positive definite is not
/// (smallest eigenvalue at or below the relative floor).
class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& what, int index = -1)
      : Error(what), index_(index) {}

  /// Index of the offending matrix in a list context, or -1.
  int index() const { return index_; }

 private:
  int index_;
};

/// A matrix that was required to be invertible is numerically singular.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter outside its documented range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// An operation that needs at least one element received none.
class EmptyInput : public Error {
 public:
  using Error::Error;
};

/// A computation whose result exceeds the double range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, int line = -1)
      : Error(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace spdmean
