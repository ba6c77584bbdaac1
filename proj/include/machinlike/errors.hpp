#pragma once

#include <stdexcept>
#include <string>

namespace machinlike {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of an operation (negative sqrt, u1 <= 1, |cotangent| <= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Working precision cannot resolve the requested result.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// A quantity that must be nonzero in a denominator vanished exactly.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Two exact computations that must agree did not; signals an arithmetic bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace machinlike
