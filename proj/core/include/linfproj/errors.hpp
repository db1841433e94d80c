#pragma once

#include <stdexcept>
#include <string>

namespace linfproj {

// Every error raised by the library derives from Error so that front ends can
// map failure classes onto exit codes with a single catch ladder.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero or a malformed rational literal.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// Shapes that do not fit together (ragged rows, A.cols != B.rows, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A basis whose rows are linearly dependent.
class RankError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the documented domain of an operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The exact solver produced something that contradicts a checked identity.
/// This always indicates a bug, never bad input.
class SolverIntegrityError : public Error {
 public:
  using Error::Error;
};

/// An LP would exceed the configured size budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A matrix handed to the decomposition is not invariant under block
/// permutations.
class NotSymmetrizedError : public Error {
 public:
  using Error::Error;
};

/// The base subspace of an amplification demo does not have the planned
/// constant alpha.
class BaseMismatchError : public Error {
 public:
  using Error::Error;
};

/// A Banach-Mazur model was requested for a parameter whose square root
/// sqrt(2a+1) is irrational.
class NonExactParameter : public Error {
 public:
  using Error::Error;
};

}  // namespace linfproj
