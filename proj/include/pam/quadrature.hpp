#pragma once

#include <cstdint>
#include <functional>

namespace pam {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::int64_t max_evals = 2'000'000;
  double truncation_margin = 4.0;  // multiples of the Gaussian decay scale

  void validate() const;
};

// Decay certificate for a semi-infinite integrand:
//   |f(s)| <= M exp(-((s - center) / scale)^2)   for s beyond center.
// Only the geometry matters for truncation; M cancels in relative bounds.
struct GaussianDecay {
  double center = 0.0;
  double scale = 1.0;
};

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;
  std::int64_t evals = 0;
};

// Adaptive Gauss-Kronrod integration of f over [0, infinity), truncated where
// the decay certificate puts the tail below tolerance.
QuadResult integrate_semi_infinite(const std::function<double(double)>& f,
                                   const GaussianDecay& decay,
                                   const QuadratureConfig& cfg);

// Same machinery on a finite interval [a, b].
QuadResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                              const QuadratureConfig& cfg);

}  // namespace pam
