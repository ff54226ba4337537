#pragma once

#include <stdexcept>
#include <string>

namespace purdyn {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (non-Hermitian operator,
/// negative spectrum, bad rank, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed or produced a result that signals corruption
/// (eigensolver non-convergence, imaginary residue in a real quantity).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A scenario configuration could not be parsed or validated.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A checked mathematical invariant (a bound, a flatness statement) failed
/// beyond tolerance.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace purdyn
