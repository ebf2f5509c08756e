#pragma once

#include <stdexcept>
#include <string>

namespace tdi {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad input data; the CLI maps these to exit code 2.
class InputError : public Error {
public:
  using Error::Error;
};

class ParseError : public InputError {
public:
  ParseError(const std::string& msg, int line = 0)
      : InputError(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

class InvariantViolation : public InputError {
public:
  using InputError::InputError;
};

class EdgeCountMismatch : public InputError {
public:
  using InputError::InputError;
};

class NoValidCycle : public InputError {
public:
  using InputError::InputError;
};

class CapExceeded : public InputError {
public:
  using InputError::InputError;
};

class PreconditionFailed : public InputError {
public:
  using InputError::InputError;
};

class NotAUnit : public Error {
public:
  using Error::Error;
};

class NonIntegralDifference : public Error {
public:
  using Error::Error;
};

// J arguments whose prefactor would leave the q^(1/2) grid.
class OffGrid : public Error {
public:
  using Error::Error;
};

class RankDeficient : public Error {
public:
  using Error::Error;
};

class OddCoefficient : public Error {
public:
  using Error::Error;
};

class Divergent : public Error {
public:
  using Error::Error;
};

} // namespace tdi
