#pragma once

#include <stdexcept>
#include <string>

namespace ivgreen {

/// Invalid input: malformed systems, arguments outside an operation's domain.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A query point lies where the operation is undefined (on E, at a pole).
class DomainError : public ValidationError {
 public:
  explicit DomainError(const std::string& what) : ValidationError(what) {}
};

/// Quadrature or linear-algebra failure. Carries the best available
/// estimate when one exists.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double estimate = 0.0, double error_bound = -1.0)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

std::string format_double(double v);

}  // namespace ivgreen
