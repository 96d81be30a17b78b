#pragma once

#include <stdexcept>
#include <string>

namespace fhlab {

/// Argument outside the domain of an operation (bad parameters, poles).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed: quadrature did not converge, a pivot was
/// non-positive, a bracket was invalid, or a cross-check disagreed.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when the recurrence and oracle routes for moments disagree.
class InstabilityError : public NumericError {
 public:
  explicit InstabilityError(const std::string& what) : NumericError(what) {}
};

}  // namespace fhlab
