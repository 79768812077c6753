#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lazy_spectra {

// Base of every error raised by the library. exit_code() is what the CLI
// reports for it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 3; }
  virtual const char* kind() const noexcept { return "error"; }
};

class InputError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
  const char* kind() const noexcept override { return "input"; }
};

class FormatError : public InputError {
 public:
  FormatError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }
  const char* kind() const noexcept override { return "format"; }

 private:
  std::size_t line_;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
  const char* kind() const noexcept override { return "dimension"; }
};

class ValueError : public InputError {
 public:
  using InputError::InputError;
  const char* kind() const noexcept override { return "value"; }
};

// Violated mathematical precondition: B not positive definite, or A outside
// the [-B, B] band.
class PreconditionError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
  const char* kind() const noexcept override { return "precondition"; }
};

class SolverError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "solver"; }
};

class NonConvergenceError : public SolverError {
 public:
  NonConvergenceError(const std::string& what, double residual);
  double residual() const noexcept { return residual_; }
  const char* kind() const noexcept override { return "non-convergence"; }

 private:
  double residual_;
};

class ConditioningError : public SolverError {
 public:
  using SolverError::SolverError;
  const char* kind() const noexcept override { return "conditioning"; }
};

// Shift schedule ran past its round cap. Usually means the residual
// operator has (numerically) zero norm.
class ScheduleError : public SolverError {
 public:
  ScheduleError(const std::string& what, int rounds);
  int rounds() const noexcept { return rounds_; }
  const char* kind() const noexcept override { return "schedule"; }

 private:
  int rounds_;
};

class AccuracyError : public SolverError {
 public:
  using SolverError::SolverError;
  const char* kind() const noexcept override { return "accuracy"; }
};

// Rethrows the in-flight exception with the prefix prepended to its message,
// preserving its type. Call only from inside a catch block.
[[noreturn]] void rethrow_with_context(const std::string& prefix);

}  // namespace lazy_spectra
