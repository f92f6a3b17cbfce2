#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lqf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tables that are not even well-formed (wrong shape, index out of range).
class StructuralError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error("syntax error at column " + std::to_string(position + 1) + ": " + what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A term uses w / w* but is evaluated in a bare lattice.
class SignatureError : public Error {
 public:
  using Error::Error;
};

class ValuationError : public Error {
 public:
  using Error::Error;
};

// Caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Unreadable or malformed input file; the message carries the location.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace lqf
