#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilspec {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in spaces of different dimension.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input. `position()` is a 0-based byte offset into the
/// parsed text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A basis index outside 1..m.
class IndexRangeError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A pair "aa" naming the same 1-form twice.
class RepeatedIndexError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Structure constants that do not define a nilpotent Lie algebra.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class JacobiError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotNilpotentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Raised when a computed quantity violates an identity that must hold for
/// every valid input. Never a property of the input.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace nilspec
