#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stepauto {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (expressions, pomsets, step words).
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Malformed automaton or machine files.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// An operation was applied outside its precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace stepauto
