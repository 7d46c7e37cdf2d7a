#pragma once

#include <stdexcept>
#include <string>

namespace fockangle {

/// Base of every error the library raises.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (dimension mismatch, non-finite data, parse failure).
class InputError : public Error {
public:
  using Error::Error;
};

/// A checked precondition of an operation does not hold, e.g. a declared orthogonality.
class PreconditionError : public InputError {
public:
  using InputError::InputError;
};

/// A dense construction would exceed the configured size budget.
class BudgetError : public Error {
public:
  using Error::Error;
};

/// An identity that holds exactly in theory failed numerically. Always a bug signal.
class ContractViolation : public Error {
public:
  using Error::Error;
};

}  // namespace fockangle
