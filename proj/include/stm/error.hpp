#ifndef STM_ERROR_HPP
#define STM_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations on arguments (vertex out of range, malformed tree, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A rectangle family handed to the inclusion-forest routine is not laminar.
class LaminarityError : public InputError {
 public:
  using InputError::InputError;
};

// Two bicliques of an interval biclique partition share an edge.
class PartitionError : public InputError {
 public:
  using InputError::InputError;
};

// Structural problem in an sd-degeneracy or construction sequence, tied to a step.
class SequenceError : public InputError {
 public:
  SequenceError(std::size_t step, const std::string& what)
      : InputError("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Text that does not follow one of the instance formats.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a semantic invariant (e.g. crossing pairs).
class ValidationError : public Error {
 public:
  ValidationError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace stm

#endif  // STM_ERROR_HPP
