#include "pam/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pam/errors.hpp"
#include "pam/specfun.hpp"

namespace pam {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_finite_x(double x) {
  if (!std::isfinite(x)) throw DomainError("moment: spatial point must be finite");
}

// 1 - exp(w) as a LogValue, sign handled for either side of w = 0.
LogValue one_minus_exp(double w) {
  if (w == 0.0) return LogValue::zero();
  if (w < 0.0) return LogValue::from_log(std::log1p(-std::exp(w)), +1);
  return LogValue::from_log(w + std::log(-std::expm1(-w)), -1);
}

}  // namespace

// ---------------------------------------------------------------------------
// Second moment
// ---------------------------------------------------------------------------

LogValue second_moment_two_point_log(const ModelParams& p, double x1, double x2) {
  p.validate();
  require_finite_x(x1);
  require_finite_x(x2);
  const double l2 = p.lambda2(), l4 = p.lambda4();
  const LogValue kernels =
      LogValue::from_log(log_heat_kernel(p.nu, p.t, x1) + log_heat_kernel(p.nu, p.t, x2));
  if (l2 == 0.0) return kernels;
  const double d = std::abs(x2 - x1);
  const double w = (d - p.t * l2) / (2.0 * std::sqrt(p.nu * p.t));
  const LogValue noise = LogValue::from_log(
      std::log(l2 / (4.0 * p.nu)) + log_heat_kernel(p.nu / 2.0, p.t, 0.5 * (x1 + x2)) +
      (p.t * l4 - 2.0 * l2 * d) / (4.0 * p.nu) + log_erfcx(w) - w * w);
  return kernels + noise;
}

double second_moment_two_point(const ModelParams& p, double x1, double x2) {
  return second_moment_two_point_log(p, x1, x2).to_value();
}

LogValue second_moment_log(const ModelParams& p, double x) {
  return second_moment_two_point_log(p, x, x);
}

double second_moment(const ModelParams& p, double x) {
  return second_moment_log(p, x).to_value();
}

LogValue second_moment_one_point_variant_log(const ModelParams& p, double x) {
  p.validate();
  require_finite_x(x);
  const double l2 = p.lambda2(), l4 = p.lambda4();
  if (l2 == 0.0) return LogValue::zero();
  const LogValue flat = LogValue::from_log(std::log(l2) - 0.5 * std::log(4.0 * kPi * p.nu * p.t));
  const LogValue grown = LogValue::from_log(std::log(l4 / (2.0 * p.nu)) +
                                            l4 * p.t / (4.0 * p.nu) +
                                            log_phi(l2 * std::sqrt(p.t / (2.0 * p.nu))));
  return LogValue::from_log(log_heat_kernel(p.nu / 2.0, p.t, x)) * (flat + grown);
}

double second_moment_one_point_variant(const ModelParams& p, double x) {
  return second_moment_one_point_variant_log(p, x).to_value();
}

// ---------------------------------------------------------------------------
// Third moment, one-dimensional route
// ---------------------------------------------------------------------------

MomentEval third_moment(const ModelParams& p, double x, const QuadratureConfig& cfg) {
  p.validate();
  cfg.validate();
  require_finite_x(x);
  const double nu = p.nu, t = p.t;
  const double l2 = p.lambda2(), l4 = p.lambda4();
  const double xfac = -3.0 * x * x / (2.0 * nu * t);
  const LogValue t1 = LogValue::from_log(-1.5 * std::log(2.0 * kPi * nu * t) + xfac);
  if (l2 == 0.0) return {t1, 0.0, 0};

  // The two integrand pieces peak at s = lambda^2 t and s = lambda^2 t / 3
  // with exponents 3 lambda^4 t/(4 nu) and lambda^4 t/(12 nu); pull the larger
  // one out so the quadrature runs on O(1) numbers at any t.
  const double e_star = 3.0 * l4 * t / (4.0 * nu);
  const double off2 = -2.0 * l4 * t / (3.0 * nu);  // second-piece exponent gap
  const double s2nt = std::sqrt(2.0 * nu * t);
  const auto integrand = [&](double s) {
    const double g1 = -3.0 * (s - l2 * t) * (s - l2 * t) / (4.0 * nu * t);
    const double p1 = (3.0 * s + l2 * t) * std::exp(g1) * phi((l2 * t + s) / s2nt);
    const double g2 = off2 - 3.0 * (s - l2 * t / 3.0) * (s - l2 * t / 3.0) / (4.0 * nu * t);
    const double p2 = (3.0 * s - l2 * t) * std::exp(g2) * phi((l2 * t - s) / s2nt);
    return p1 + p2;
  };

  const double eps = std::max(cfg.rel_tol / 100.0, 1e-16);
  const double s_max = 2.0 * l2 * t + 4.0 * std::sqrt(nu * t * std::log(1.0 / eps));
  const QuadResult J = integrate_interval(integrand, 0.0, s_max, cfg);
  if (!(J.value > 0.0))
    throw AccuracyError("third_moment: quadrature lost the sign of a positive integral");

  const LogValue integral_term = LogValue::from_log(
      std::log(l2) - 2.5 * std::log(2.0) - std::log(kPi) - 3.0 * std::log(nu) -
      2.0 * std::log(t) + l4 * t / (4.0 * nu) + xfac + e_star + std::log(J.value));
  const LogValue t3 =
      LogValue::from_log(std::log(l2 / (2.0 * std::sqrt(2.0) * kPi * nu * nu * t)) +
                         l4 * t / (4.0 * nu) + xfac + log_phi(l2 * std::sqrt(t / (2.0 * nu))));
  return {integral_term + t1 + t3, J.err_est / J.value, J.evals};
}

double third_moment_value(const ModelParams& p, double x, const QuadratureConfig& cfg) {
  return third_moment(p, x, cfg).value();
}

// ---------------------------------------------------------------------------
// Third moment, triple-integral route
// ---------------------------------------------------------------------------

namespace {

struct Integrand3d {
  double nu, t, l2;
  double x1, x2, x3;  // sorted ascending

  double exponent(double s1, double s2, double s3) const {
    const double L1 = x3 + s2 + s3;
    const double L2 = x2 + s1 - s3;
    const double L3 = x1 - s1 - s2;
    return l2 * (s1 + s2 + s3) / nu - (L1 * L1 + L2 * L2 + L3 * L3) / (2.0 * nu * t);
  }

  double poly(double s1, double s2, double s3) const {
    return (-s1 + s2 + 2.0 * s3 + (x3 - x2)) * (s1 + 2.0 * s2 + s3 + (x3 - x1)) *
           (2.0 * s1 + s2 - s3 + (x2 - x1));
  }

  double log_prefactor() const {
    return -4.5 * std::log(nu * t) - 1.5 * std::log(2.0 * kPi);
  }
};

}  // namespace

LogValue third_moment_integrand_3d_log(const ModelParams& p, const TriplePoint& xs,
                                       double s1, double s2, double s3) {
  p.validate();
  xs.validate();
  if (s1 < 0.0 || s2 < 0.0 || s3 < 0.0)
    throw DomainError("third_moment_integrand_3d: s_i must be nonnegative");
  const TriplePoint s = xs.sorted();
  const Integrand3d f{p.nu, p.t, p.lambda2(), s.x1, s.x2, s.x3};
  const double poly = f.poly(s1, s2, s3);
  if (poly == 0.0) return LogValue::zero();
  return LogValue::from_log(
      f.log_prefactor() + f.exponent(s1, s2, s3) + std::log(std::abs(poly)),
      poly > 0.0 ? +1 : -1);
}

double third_moment_integrand_3d(const ModelParams& p, const TriplePoint& xs,
                                 double s1, double s2, double s3) {
  return third_moment_integrand_3d_log(p, xs, s1, s2, s3).to_value();
}

MomentEval third_moment_three_point(const ModelParams& p, const TriplePoint& xs,
                                    const QuadratureConfig& cfg) {
  p.validate();
  cfg.validate();
  xs.validate();
  const TriplePoint s = xs.sorted();
  if (p.lambda2() == 0.0) {
    return {LogValue::from_log(log_heat_kernel(p.nu, p.t, s.x1) +
                               log_heat_kernel(p.nu, p.t, s.x2) +
                               log_heat_kernel(p.nu, p.t, s.x3)),
            0.0, 0};
  }
  const Integrand3d f{p.nu, p.t, p.lambda2(), s.x1, s.x2, s.x3};
  const double nu_t = p.nu * p.t;
  const double span = 0.5 * (std::abs(s.x1) + std::abs(s.x3));
  const double reach = f.l2 * p.t + 6.0 * std::sqrt(nu_t) + span;

  // Scaling exponent: coarse scan of the (concave, but degenerate) exponent
  // over the region that carries the mass. Only used to keep the scaled
  // integrand inside double range; any nearby value works.
  double e0 = f.exponent(0.0, 0.0, 0.0);
  double mag = std::abs(f.poly(0, 0, 0));
  const int n_scan = 14;
  for (int i = 0; i <= n_scan; ++i)
    for (int j = 0; j <= n_scan; ++j)
      for (int k = 0; k <= n_scan; ++k) {
        const double a = reach * i / n_scan, b = reach * j / n_scan, c = reach * k / n_scan;
        const double e = f.exponent(a, b, c);
        if (e > e0) e0 = e;
        mag = std::max(mag, std::abs(f.poly(a, b, c)));
      }

  std::int64_t evals = 0;
  const auto budget = [&](std::int64_t used) {
    evals += used;
    if (evals > cfg.max_evals)
      throw ConvergenceError("third_moment_three_point: max_evals exceeded", 0.0, 0.0);
  };

  QuadratureConfig level = cfg;
  level.rel_tol = std::max(cfg.rel_tol / 10.0, 1e-13);
  level.abs_tol = std::max(cfg.abs_tol, mag * std::sqrt(nu_t) * level.rel_tol * 1e-3);

  const double scale_in = std::sqrt(nu_t);
  const double scale_out = std::sqrt(2.0 * nu_t);

  const auto inner_s3 = [&](double s1v, double s2v) {
    const auto g = [&](double s3v) {
      return f.poly(s1v, s2v, s3v) * std::exp(f.exponent(s1v, s2v, s3v) - e0);
    };
    const double slope = f.l2 / p.nu - ((f.x3 + s2v) - (f.x2 + s1v)) / nu_t;
    const QuadResult r = integrate_semi_infinite(g, {slope * nu_t / 2.0, scale_in}, level);
    budget(r.evals);
    return r.value;
  };
  const auto inner_s2 = [&](double s1v) {
    const auto g = [&](double s2v) { return inner_s3(s1v, s2v); };
    const double slope = f.l2 / p.nu - ((f.x3) - (f.x1 - s1v)) / nu_t;
    QuadratureConfig lvl2 = level;
    lvl2.abs_tol = level.abs_tol * scale_in;
    const QuadResult r = integrate_semi_infinite(g, {slope * nu_t / 2.0, scale_out}, lvl2);
    return r.value;
  };

  const auto outer = [&](double s1v) { return inner_s2(s1v); };
  const double slope1 = f.l2 / p.nu - (f.x2 - f.x1) / nu_t;
  QuadratureConfig lvl1 = level;
  lvl1.abs_tol = level.abs_tol * nu_t;
  const QuadResult r = integrate_semi_infinite(outer, {slope1 * nu_t / 2.0, scale_out}, lvl1);
  if (!(r.value > 0.0))
    throw AccuracyError("third_moment_three_point: quadrature lost the sign of the integral");

  const LogValue value =
      LogValue::from_log(f.log_prefactor() + e0 + std::log(r.value));
  const double rel = r.err_est / r.value + 2.0 * level.rel_tol;
  return {value, rel, evals};
}

// ---------------------------------------------------------------------------
// Mean-value bracket
// ---------------------------------------------------------------------------

ABRange ab_range(const ModelParams& p) {
  p.validate();
  const double mid = phi(p.lambda2() * std::sqrt(p.t / (2.0 * p.nu)));
  return {0.0, mid, mid, 1.0};
}

MomentBounds third_moment_bounds(const ModelParams& p, double x) {
  p.validate();
  require_finite_x(x);
  const double nu = p.nu, t = p.t;
  const double l2 = p.lambda2(), l4 = p.lambda4();
  const double xfac = -3.0 * x * x / (2.0 * nu * t);
  const LogValue t1 = LogValue::from_log(-1.5 * std::log(2.0 * kPi * nu * t) + xfac);
  if (l2 == 0.0) return {t1, t1};

  const double log_phi_mid = log_phi(l2 * std::sqrt(t / (2.0 * nu)));
  const LogValue t2p = LogValue::from_log(
      std::log(l2 / (2.0 * std::sqrt(2.0) * kPi * nu * nu * t)) + l4 * t / (4.0 * nu) + xfac);
  const LogValue t3 = t2p * LogValue::from_log(log_phi_mid);
  const LogValue t4 = LogValue::from_log(
      0.5 * std::log(2.0) + 2.0 * std::log(l2) - 0.5 * std::log(3.0 * kPi * std::pow(nu, 5) * t) +
      l4 * t / nu + xfac + log_phi(l2 * std::sqrt(3.0 * t / (2.0 * nu))));

  // Extremes of the admissible (a, b) box: the lower bound drops the (b - a)
  // term entirely and scales the leading term by Phi; the upper bound takes
  // b = 1, a = 0.
  const LogValue lower = t1 + t3 + LogValue::from_log(log_phi_mid) * t4;
  const LogValue upper = t1 + t2p + t3 + t4;
  return {lower, upper};
}

// ---------------------------------------------------------------------------
// Antiderivative I(r)
// ---------------------------------------------------------------------------

double antideriv_I_integrand(double s2, double s1, const ModelParams& p) {
  p.validate();
  if (s2 < 0.0 || s1 < 0.0) throw DomainError("antideriv_I_integrand: s must be nonnegative");
  const double nu = p.nu, t = p.t;
  const double l2 = p.lambda2(), l4 = p.lambda4();
  const double m = (s1 - s2 + l2 * t) / (2.0 * std::sqrt(nu * t));
  const double a3 = std::sqrt(kPi * nu) * l2 * std::pow(t, 1.5) / 8.0 *
                    (t * (6.0 * nu + l4 * t) - 9.0 * (s1 + s2) * (s1 + s2)) * erfcx(m);
  return std::exp(-s2 * s2 / (nu * t) + (l2 / nu - s1 / (nu * t)) * s2) * a3;
}

LogValue antideriv_I_log(double r, double s1, const ModelParams& p) {
  p.validate();
  if (r < 0.0 || s1 < 0.0) throw DomainError("antideriv_I: r and s1 must be nonnegative");
  const double nu = p.nu, t = p.t;
  const double l2 = p.lambda2();
  if (l2 == 0.0) return LogValue::zero();
  const double snt = std::sqrt(nu * t);
  const double u_plus = (s1 + l2 * t) / (2.0 * snt);
  const double u_minus = (l2 * t - s1) / (2.0 * snt);
  const double w2 = (2.0 * r + s1 - l2 * t) / (2.0 * snt);
  const double w3 = (s1 + l2 * t - r) / (2.0 * snt);
  const double log_q = -r * (r + s1 - l2 * t) / (nu * t);
  const double spnt = std::sqrt(kPi * nu * t);

  const auto term = [](double log_mag, int sign) { return LogValue::from_log(log_mag, sign); };
  const double lA = std::log(spnt * l2 * t);
  const double lC = (s1 > 0.0) ? std::log(3.0 * spnt * s1)
                               : -std::numeric_limits<double>::infinity();

  LogValue sum = LogValue::zero();
  // A-block: coefficient sqrt(pi nu t) lambda^2 t
  sum = sum + term(lA + std::log(4.0) + log_erfcx(u_plus), -1);
  sum = sum + term(lA + std::log(5.0) + log_q + log_erfcx(w2), +1);
  sum = sum + term(lA + std::log(5.0) + log_erfcx(u_minus), +1);
  // 4 (3r + lambda^2 t) q erfcx(w3) sqrt(pi nu t)
  sum = sum + term(std::log(4.0 * spnt * (3.0 * r + l2 * t)) + log_q + log_erfcx(w3), +1);
  // C-block: coefficient 3 sqrt(pi nu t) s1
  sum = sum + term(lC + std::log(4.0) + log_erfcx(u_plus), -1);
  sum = sum + term(lC + log_erfcx(u_minus), +1);
  sum = sum + term(lC + log_q + log_erfcx(w2), +1);
  sum = sum + term(lC + std::log(4.0) + log_q + log_erfcx(w3), +1);
  sum = sum + term(lC + std::log(2.0) + u_minus * u_minus, -1);
  // D-block: -2t [5 sqrt(pi nu t) lambda^2 e^{u_minus^2} + 3 nu (1 - q)]
  sum = sum + term(std::log(10.0 * t * spnt * l2) + u_minus * u_minus, -1);
  sum = sum + LogValue::from_value(-6.0 * nu * t) * one_minus_exp(log_q);

  return LogValue::from_value(l2 * nu * t * t / 16.0) * sum;
}

double antideriv_I(double r, double s1, const ModelParams& p) {
  return antideriv_I_log(r, s1, p).to_value();
}

// ---------------------------------------------------------------------------
// Rates and reference formulas
// ---------------------------------------------------------------------------

double asymptotic_rate(int k, const ModelParams& p) {
  p.validate();
  if (k < 2) throw DomainError("asymptotic_rate: k must be >= 2");
  return p.lambda4() * k * (double(k) * k - 1.0) / (24.0 * p.nu);
}

double bertini_cancrini_moment(int k, double nu, double t) {
  if (k < 1) throw DomainError("bertini_cancrini_moment: k must be >= 1");
  if (!(nu > 0.0) || !(t > 0.0))
    throw DomainError("bertini_cancrini_moment: need nu > 0 and t > 0");
  const double m = double(k) * (double(k) * k - 1.0);
  return 2.0 * std::exp(m * t / (24.0 * nu)) * phi(std::sqrt(m * t / (12.0 * nu)));
}

}  // namespace pam
