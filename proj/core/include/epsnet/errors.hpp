#pragma once

#include <stdexcept>
#include <string>

namespace epsnet {

/// Malformed or out-of-contract input (non-normalized probabilities, bad files, empty samples).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Argument outside the mathematical domain of a formula, e.g. a radius past the
/// spherical comparison domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A bound requested outside the curvature regime it is stated for (K > 0 where K <= 0 is required).
class RegimeError : public DomainError {
 public:
  explicit RegimeError(const std::string& what) : DomainError(what) {}
};

}  // namespace epsnet
