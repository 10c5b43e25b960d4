#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace persnorm {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Errors caused by bad user input (bad files, bad parameters, degenerate
/// data). The CLI maps these to exit code 1; anything else is internal.
class InputError : public Error {
 public:
  using Error::Error;
};

class DegenerateCloudError : public InputError {
 public:
  using InputError::InputError;
};

class NonFiniteError : public InputError {
 public:
  using InputError::InputError;
};

class ConstantInputError : public InputError {
 public:
  using InputError::InputError;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class PolicyError : public InputError {
 public:
  using InputError::InputError;
};

/// Raised when a complex would exceed the configured simplex budget, or when
/// the dense oracle is asked to handle too many points.
class CapacityError : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : InputError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace persnorm
