#pragma once

#include <stdexcept>
#include <string>

namespace jacobi {

/// Thrown when an operator is applied to an expansion in the wrong basis.
class BasisMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A symbolic result left the Phi-weighted polynomial algebra.
class NonRepresentable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quadrature grid too coarse for the requested degree.
class InsufficientResolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jacobi
