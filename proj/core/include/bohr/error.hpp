#pragma once

#include <stdexcept>
#include <string>

namespace bohr {

// Raised when an input violates an operation's precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a numerical routine cannot produce a result (e.g. a bracket
// could not be established).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by embed_norm(..., EmbedMethod::closed_form) when the pair of spaces
// has no closed form; callers fall back to the numeric path.
class NoClosedFormError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace bohr
