#pragma once

#include <stdexcept>
#include <string>

namespace crossmetric {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a documented invariant (non-metric distance,
/// non-Hermitian Dirac operator, parity mismatch, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Elements from two different group models or crossed products were mixed.
class ModelMismatchError : public Error {
 public:
  using Error::Error;
};

/// A truncation would exceed the configured ball-size cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A seminorm vanishes on a non-constant direction of the search space.
class DegenerateSeminormError : public Error {
 public:
  using Error::Error;
};

}  // namespace crossmetric
