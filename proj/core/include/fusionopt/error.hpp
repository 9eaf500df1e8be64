#pragma once

#include <stdexcept>
#include <string>

namespace fusionopt {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on ambient dimension, member count or length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed scalar data (non-finite entries, bad tolerances, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An SPD routine met an eigenvalue at or below rank_eps.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// The family does not span the ambient space.
class NotAFrameError : public Error {
 public:
  using Error::Error;
};

/// The candidate family fails the duality identity.
class NotADualError : public Error {
 public:
  using Error::Error;
};

/// A stated hypothesis of a construction does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Index or erasure size outside the admissible range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the configured cap.
class EnumerationLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace fusionopt
