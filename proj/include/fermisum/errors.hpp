#pragma once

#include <stdexcept>
#include <string>

namespace fermisum {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two elements from distinct algebra contexts were combined.
class ContextError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument was violated.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Requested algebra context exceeds the generator capacity guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A matrix required to be invertible is singular.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Input failed a structural classification (e.g. not unitary).
class ClassificationError : public Error {
 public:
  using Error::Error;
};

/// A matrix is too badly conditioned for the requested operation.
class ConditionError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested at a pole of a special function.
class PoleError : public Error {
 public:
  using Error::Error;
};

}  // namespace fermisum
