#pragma once

#include <stdexcept>
#include <string>

namespace paretogof {

// Bad parameters, out-of-support observations, violated preconditions.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Quadrature/root-finding/maximization that failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace paretogof
