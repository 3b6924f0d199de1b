#pragma once

#include <stdexcept>
#include <string>

namespace patcoh {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic precondition violated (division by zero, zero normal, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operands live in different coordinate fields.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// An internal identity that the theory guarantees did not hold. Always a bug
/// or an input that violates an unchecked assumption.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Class-count safety cap exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace patcoh
