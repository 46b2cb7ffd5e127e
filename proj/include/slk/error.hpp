#pragma once

#include <stdexcept>
#include <string>

namespace slk {

// Base of every error the toolkit raises. The CLI maps the category to an
// exit code: validation-type errors exit 1, convergence/infeasibility exit 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ConflictError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ConsistencyError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ArgumentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class LookupError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IncompleteDataError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IllPosedError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnrepresentableError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConstraintError : public Error {
 public:
  using Error::Error;
};

class DegenerateFrontierError : public Error {
 public:
  using Error::Error;
};

class GuardError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

}  // namespace slk
