#include "pam/lambda_integrals.hpp"

#include <cmath>
#include <vector>

#include "pam/errors.hpp"
#include "pam/quadrature.hpp"
#include "pam/specfun.hpp"

namespace pam {

void LambdaArgs::validate() const {
  if (n < 0) throw DomainError("LambdaArgs: n must be nonnegative");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("LambdaArgs: t must be positive");
  if (!std::isfinite(beta)) throw DomainError("LambdaArgs: beta must be finite");
}

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// The exp(beta^2 t/4)(2 - erfc(beta sqrt(t)/2)) block shared by all closed
// forms, as a LogValue: it equals erfcx(-beta sqrt(t)/2).
LogValue shared_block_log(double beta, double t) {
  return LogValue::from_log(log_erfcx(-beta * std::sqrt(t) / 2.0));
}

LogValue closed_form_log(const LambdaArgs& a) {
  const double b = a.beta, t = a.t;
  const LogValue E = shared_block_log(b, t);
  const auto lv = [](double v) { return LogValue::from_value(v); };
  switch (a.n) {
    case 0:
      return lv(kSqrtPi * std::sqrt(t) / 2.0) * E;
    case 1:
      return lv(t / 2.0) + lv(kSqrtPi * std::pow(t, 1.5) * b / 4.0) * E;
    case 2:
      return lv(b * t * t / 4.0) +
             lv(kSqrtPi * std::pow(t, 1.5) * (b * b * t + 2.0) / 8.0) * E;
    case 3:
      return lv(t * t / 2.0 + b * b * t * t * t / 8.0) +
             lv(kSqrtPi * b * std::pow(t, 2.5) * (b * b * t + 6.0) / 16.0) * E;
    default:
      throw UnsupportedOrderError("lambda_n: closed form only tabulated for n <= 3");
  }
}

LogValue quadrature_fallback_log(const LambdaArgs& a) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-13;
  const GaussianDecay decay{std::max(a.beta * a.t / 2.0, 0.0), std::sqrt(a.t)};
  const auto f = [&](double s) {
    return std::pow(s, a.n) * std::exp(-s * s / a.t + a.beta * s);
  };
  return LogValue::from_value(integrate_semi_infinite(f, decay, cfg).value);
}

LogValue recursion_log(const LambdaArgs& a) {
  LogValue lm2 = closed_form_log({0, a.beta, a.t});
  if (a.n == 0) return lm2;
  LogValue lm1 = closed_form_log({1, a.beta, a.t});
  if (a.n == 1) return lm1;
  const LogValue half_bt = LogValue::from_value(a.beta * a.t / 2.0);
  for (int k = 2; k <= a.n; ++k) {
    const LogValue t1 = half_bt * lm1;
    const LogValue t2 = LogValue::from_value(a.t * (k - 1) / 2.0) * lm2;
    LogValue next = t1 + t2;
    // Upward recursion is a signed sum once beta < 0. If the two terms wipe
    // out more than ~10 digits of each other, trust direct quadrature of the
    // defining integral instead.
    const double top = std::max(t1.log_abs, t2.log_abs);
    if (a.beta < 0.0 && (next.is_zero() || next.log_abs < top - 23.0))
      next = quadrature_fallback_log({k, a.beta, a.t});
    lm2 = lm1;
    lm1 = next;
  }
  return lm1;
}

}  // namespace

LogValue lambda_n_log(const LambdaArgs& args, LambdaMode mode) {
  args.validate();
  return mode == LambdaMode::closed_form ? closed_form_log(args) : recursion_log(args);
}

double lambda_n(const LambdaArgs& args, LambdaMode mode) {
  return lambda_n_log(args, mode).to_value();
}

LogValue gauss_linear_integral_log(double a, double b, double c, double d) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("gauss_linear_integral: c must be positive");
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(d))
    throw DomainError("gauss_linear_integral: arguments must be finite");
  // exp(c d^2/4) Phi(sqrt(2c) d/2) = erfcx(-sqrt(c) d/2) / 2
  const LogValue gauss_part =
      LogValue::from_value(kSqrtPi * (a * d + 2.0 * b) / (4.0 * std::sqrt(c))) *
      LogValue::from_log(log_erfcx(-std::sqrt(c) * d / 2.0));
  return gauss_part + LogValue::from_value(a / (2.0 * c));
}

double gauss_linear_integral(double a, double b, double c, double d) {
  return gauss_linear_integral_log(a, b, c, d).to_value();
}

}  // namespace pam
