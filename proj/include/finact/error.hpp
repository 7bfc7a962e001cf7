#pragma once

#include <stdexcept>
#include <string>

namespace finact {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or semantically invalid input. Maps to CLI exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Elements or quotients from incompatible group families were combined.
class FamilyMismatch : public InputError {
 public:
  using InputError::InputError;
};

/// A configured size cap was hit. Maps to CLI exit code 3.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace finact
