#pragma once

#include <stdexcept>
#include <string>

namespace pam {

// Invalid argument or parameter set (nu <= 0, non-finite input, ...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Closed forms are only tabulated up to a fixed order.
class UnsupportedOrderError : public DomainError {
 public:
  explicit UnsupportedOrderError(const std::string& msg) : DomainError(msg) {}
};

// Misconfigured numerical machinery (contour ordering, grid stability, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature or iteration failed to reach the requested tolerance.
// Carries the best estimate obtained so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, double best_estimate, double err_estimate)
      : std::runtime_error(msg), best(best_estimate), err(err_estimate) {}
  double best;
  double err;
};

// A computed result failed an internal accuracy contract (e.g. a moment
// that must be real came back with a large imaginary residual).
class AccuracyError : public std::runtime_error {
 public:
  explicit AccuracyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pam
