#pragma once

#include <cstdint>

#include "pam/log_value.hpp"
#include "pam/model.hpp"
#include "pam/quadrature.hpp"

namespace pam {

// ---------------------------------------------------------------------------
// Second moment (delta initial data)
// ---------------------------------------------------------------------------

// E[u(t,x1) u(t,x2)]: product of heat kernels plus the exp*erfc noise term.
double second_moment_two_point(const ModelParams& p, double x1, double x2);
LogValue second_moment_two_point_log(const ModelParams& p, double x1, double x2);

// E[u(t,x)^2], defined as the coincident-point limit of the two-point formula.
double second_moment(const ModelParams& p, double x);
LogValue second_moment_log(const ModelParams& p, double x);

// Alternative closed one-point expression seen in the literature. It carries
// an extra lambda^2 factor relative to the coincident-point limit of the
// two-point formula (the two agree only at |lambda| = 1), so it is exposed
// separately and never used internally.
double second_moment_one_point_variant(const ModelParams& p, double x);
LogValue second_moment_one_point_variant_log(const ModelParams& p, double x);

// ---------------------------------------------------------------------------
// Third moment (delta initial data)
// ---------------------------------------------------------------------------

// Result of a quadrature-backed moment evaluation.
struct MomentEval {
  LogValue log_value;
  double rel_err = 0.0;
  std::int64_t evals = 0;

  double value() const { return log_value.to_value(); }
};

// Integrand of the triple-integral form, evaluated at sorted spatial points
// (general inputs are sorted internally). Signed.
double third_moment_integrand_3d(const ModelParams& p, const TriplePoint& xs,
                                 double s1, double s2, double s3);
LogValue third_moment_integrand_3d_log(const ModelParams& p, const TriplePoint& xs,
                                       double s1, double s2, double s3);

// E[u(t,x1) u(t,x2) u(t,x3)] by iterated adaptive quadrature of the triple
// integral (innermost s3, then s2, then s1).
MomentEval third_moment_three_point(const ModelParams& p, const TriplePoint& xs,
                                    const QuadratureConfig& cfg);

// E[u(t,x)^3] by the reduced one-dimensional integral plus closed terms.
MomentEval third_moment(const ModelParams& p, double x, const QuadratureConfig& cfg);
double third_moment_value(const ModelParams& p, double x, const QuadratureConfig& cfg = {});

// Closed-form bracket around E[u(t,x)^3] from the mean-value form, with the
// two constants pinned to the extremes of their admissible range.
struct MomentBounds {
  LogValue lower;
  LogValue upper;
};
MomentBounds third_moment_bounds(const ModelParams& p, double x);

// Admissible (a, b) range of the mean-value form.
ABRange ab_range(const ModelParams& p);

// ---------------------------------------------------------------------------
// Derivation kernels exposed for cross-checks
// ---------------------------------------------------------------------------

// Closed-form antiderivative I(r) of antideriv_I_integrand in its first
// argument, with I(0) = 0.
double antideriv_I(double r, double s1, const ModelParams& p);
LogValue antideriv_I_log(double r, double s1, const ModelParams& p);

// d/dr antideriv_I: the erfc-carrying inner-integral term.
double antideriv_I_integrand(double s2, double s1, const ModelParams& p);

// ---------------------------------------------------------------------------
// Rates and reference formulas
// ---------------------------------------------------------------------------

// lim (1/t) log E[u(t,x)^k] = lambda^4 k (k^2 - 1) / (24 nu), k >= 2.
double asymptotic_rate(int k, const ModelParams& p);

// Historical k-th moment expression for flat initial data at lambda = 1;
// correct only for k = 2 and kept as a flagged reference.
double bertini_cancrini_moment(int k, double nu, double t);
constexpr bool bertini_cancrini_authoritative(int k) { return k == 2; }

}  // namespace pam
