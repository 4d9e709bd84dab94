#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lagsg {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed polynomial text. `position` is a 0-based byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Bad configuration or argument shape (wrong arity, unknown variable, unsupported chart).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The mathematics has no answer at the requested input (singular metric,
// base point outside the solution domain, degenerate branch).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Should be unreachable for valid inputs.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lagsg
