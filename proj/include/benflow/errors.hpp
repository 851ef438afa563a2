#pragma once

#include <stdexcept>
#include <string>

namespace benflow {

// Argument outside the mathematical domain of an operation (non-finite input,
// s outside [1,b), z that is not an eigenvalue, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller violated a documented precondition (empty input, bad dimension,
// mixed symbol bases, k = 0, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative kernel failed to converge or produced non-finite output.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Values exceeded the representable double range.
class OverflowError : public std::overflow_error {
 public:
  OverflowError(const std::string& what, double safe_limit)
      : std::overflow_error(what), safe_limit_(safe_limit) {}

  // Largest argument (usually a time t) known to be safe.
  double safe_limit() const noexcept { return safe_limit_; }

 private:
  double safe_limit_;
};

// A quantity cannot be expressed exactly over the declared symbol basis.
class RepresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Spectral structure (defective or clustered eigenvalues) the requested
// construction does not handle.
class UnsupportedStructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace benflow
