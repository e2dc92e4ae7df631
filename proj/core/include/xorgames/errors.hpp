#pragma once

#include <stdexcept>
#include <string>

namespace xorgames {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix/state dimensions do not fit the operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Requested object exceeds the configured size caps.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Input is (numerically) zero where a nonzero object is required.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// A question label required by the game is missing from the strategy.
class LabelError : public Error {
 public:
  using Error::Error;
};

// A primal/dual object violates its feasibility invariant.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

// Certificate decomposition failed to reproduce the required structure.
class CertificateError : public Error {
 public:
  using Error::Error;
};

// Operator is too singular for the pseudo-inverse direction to be meaningful.
class SingularOperatorError : public Error {
 public:
  using Error::Error;
};

// Intertwiner collapsed to (numerically) zero.
class DegenerateIntertwinerError : public Error {
 public:
  using Error::Error;
};

}  // namespace xorgames
