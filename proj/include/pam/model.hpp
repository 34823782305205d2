#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "pam/errors.hpp"

namespace pam {

// The (nu, lambda, t) triple every moment formula consumes.
// lambda may be any real; only lambda^2 enters the formulas.
struct ModelParams {
  double nu = 1.0;      // diffusion
  double lambda = 1.0;  // noise intensity
  double t = 1.0;       // time

  void validate() const {
    if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("ModelParams: nu must be positive");
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("ModelParams: t must be positive");
    if (!std::isfinite(lambda)) throw DomainError("ModelParams: lambda must be finite");
  }

  double lambda2() const { return lambda * lambda; }
  double lambda4() const { return lambda2() * lambda2(); }
};

struct TriplePoint {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0;

  void validate() const {
    if (!std::isfinite(x1) || !std::isfinite(x2) || !std::isfinite(x3))
      throw DomainError("TriplePoint: coordinates must be finite");
  }

  // Ascending copy; the three-point formula assumes x1 <= x2 <= x3 and the
  // general case reduces to it by symmetry.
  TriplePoint sorted() const {
    std::array<double, 3> v{x1, x2, x3};
    std::sort(v.begin(), v.end());
    return {v[0], v[1], v[2]};
  }
};

// Admissible range of the two mean-value constants in the bounded
// third-moment form: 0 <= a <= Phi(lambda^2 sqrt(t/2nu)) <= b <= 1.
struct ABRange {
  double a_lo = 0.0;
  double a_hi = 0.0;
  double b_lo = 0.0;
  double b_hi = 1.0;
};

}  // namespace pam
