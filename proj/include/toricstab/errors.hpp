#pragma once

#include <stdexcept>
#include <string>

namespace toricstab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input document. `location` is a JSON-pointer-like path.
struct SchemaError : Error {
  SchemaError(std::string where, const std::string& what)
      : Error(where + ": " + what), location(std::move(where)) {}
  std::string location;
};

/// Well-formed input that violates a mathematical invariant
/// (non-primitive ray, non-increasing filtration, ...).
struct SemanticError : Error {
  using Error::Error;
};

/// A module operation could not be carried out on valid inputs.
struct ComputationError : Error {
  using Error::Error;
};

struct NotAmpleError : ComputationError {
  using ComputationError::ComputationError;
};

}  // namespace toricstab
