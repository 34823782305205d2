#include "pam/contour.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "pam/errors.hpp"

namespace pam {

namespace {

constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;

double tolerance_eps(const QuadratureConfig& cfg) {
  return std::max(cfg.rel_tol * 1e-2, 1e-16);
}

struct Axis {
  std::vector<cplx> weighted_exp;  // exp(nu t z^2/2 + x z) * trapezoid weight
  std::vector<cplx> z;
};

Axis build_axis(double alpha, double x, const ModelParams& p, double Y, double h) {
  const int half = (int)std::ceil(Y / h);
  const int n = 2 * half + 1;
  Axis ax;
  ax.weighted_exp.resize(n);
  ax.z.resize(n);
  for (int i = 0; i < n; ++i) {
    const double y = (i - half) * h;
    const cplx z(alpha, y);
    const cplx e = std::exp(0.5 * p.nu * p.t * z * z + x * z);
    const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
    ax.z[i] = z;
    ax.weighted_exp[i] = w * e;
  }
  return ax;
}

cplx tensor_sum(int k, const std::vector<Axis>& ax, double pole, std::int64_t* evals) {
  const auto ratio = [pole](cplx za, cplx zb) {
    const cplx d = za - zb;
    return d / (d - pole);
  };
  cplx acc(0.0, 0.0);
  if (k == 2) {
    const size_t n1 = ax[0].z.size(), n2 = ax[1].z.size();
    for (size_t i = 0; i < n1; ++i) {
      cplx row(0.0, 0.0);
      for (size_t j = 0; j < n2; ++j)
        row += ratio(ax[0].z[i], ax[1].z[j]) * ax[1].weighted_exp[j];
      acc += ax[0].weighted_exp[i] * row;
    }
    *evals += (std::int64_t)n1 * n2;
    return acc / std::pow(2.0 * kPi, 2);
  }
  const size_t n1 = ax[0].z.size(), n2 = ax[1].z.size(), n3 = ax[2].z.size();
  for (size_t i = 0; i < n1; ++i) {
    const cplx z1 = ax[0].z[i];
    cplx plane(0.0, 0.0);
    for (size_t j = 0; j < n2; ++j) {
      const cplx z2 = ax[1].z[j];
      const cplx r12 = ratio(z1, z2);
      cplx row(0.0, 0.0);
      for (size_t m = 0; m < n3; ++m)
        row += ratio(z1, ax[2].z[m]) * ratio(z2, ax[2].z[m]) * ax[2].weighted_exp[m];
      plane += r12 * ax[1].weighted_exp[j] * row;
    }
    acc += ax[0].weighted_exp[i] * plane;
  }
  *evals += (std::int64_t)n1 * n2 * n3;
  return acc / std::pow(2.0 * kPi, 3);
}

}  // namespace

ContourConfig ContourConfig::defaults_for(int k, const ModelParams& p) {
  p.validate();
  if (k != 2 && k != 3) throw DomainError("contour: k must be 2 or 3");
  const double sep = p.lambda2() / p.nu;
  const double delta = 0.5 * std::max(1.0, sep);
  ContourConfig c;
  c.alphas.resize(k);
  for (int j = 0; j < k; ++j) c.alphas[k - 1 - j] = j * (sep + delta);
  c.cfg.rel_tol = (k == 2) ? 1e-9 : 1e-7;
  c.cfg.max_evals = (k == 2) ? 100'000'000 : 2'000'000'000;
  return c;
}

void ContourConfig::validate(int k, const ModelParams& p) const {
  p.validate();
  if (k != 2 && k != 3) throw DomainError("contour: k must be 2 or 3");
  if ((int)alphas.size() != k) throw ConfigError("contour: need one alpha per contour");
  const double sep = p.lambda2() / p.nu;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (!(alphas[a] - alphas[b] > sep))
        throw ConfigError("contour: pole separation violated (alpha_A - alpha_B <= lambda^2/nu)");
  cfg.validate();
}

ContourResult bc_contour_moment(int k, const ModelParams& p, std::span<const double> xs,
                                const ContourConfig& ccfg) {
  ccfg.validate(k, p);
  if ((int)xs.size() != k) throw DomainError("contour: need one point per contour");
  if (!std::is_sorted(xs.begin(), xs.end()))
    throw DomainError("contour: points must be sorted ascending");

  const double nu_t = p.nu * p.t;
  const double eps = tolerance_eps(ccfg.cfg);
  double a_max = 0.0, xa_max = 0.0, omega = 0.0, re_exp = 0.0;
  for (int j = 0; j < k; ++j) {
    a_max = std::max(a_max, std::abs(ccfg.alphas[j]));
    xa_max = std::max(xa_max, std::abs(xs[j] * ccfg.alphas[j]));
    omega = std::max(omega, nu_t * std::abs(ccfg.alphas[j]) + std::abs(xs[j]));
    re_exp += 0.5 * nu_t * ccfg.alphas[j] * ccfg.alphas[j] + std::abs(xs[j] * ccfg.alphas[j]);
  }
  if (re_exp > 600.0)
    throw ConfigError("contour: exponential factors exceed double range at these parameters");

  const double Y =
      (ccfg.half_height > 0.0)
          ? ccfg.half_height
          : std::sqrt(2.0 * (std::log(1.0 / eps) + 0.5 * nu_t * a_max * a_max + xa_max) / nu_t) +
                ccfg.cfg.truncation_margin / std::sqrt(nu_t);
  double h = (ccfg.nodes_per_unit > 0)
                 ? 1.0 / ccfg.nodes_per_unit
                 : 2.0 * kPi / (omega + std::sqrt(2.0 * nu_t * std::log(1.0 / eps)));

  // Fixed-step trapezoid is super-algebraically accurate on these entire,
  // Gaussian-decaying integrands; step halving certifies the estimate.
  ContourResult out;
  cplx prev(0.0, 0.0);
  bool have_prev = false;
  for (int pass = 0; pass < 12; ++pass) {
    std::vector<Axis> ax;
    ax.reserve(k);
    const double next_cost = std::pow(2.0 * std::ceil(Y / h) + 1.0, k);
    if (out.evals + next_cost > (double)ccfg.cfg.max_evals)
      throw ConvergenceError("contour: max_evals exceeded", prev.real(), out.err_est);
    for (int j = 0; j < k; ++j) ax.push_back(build_axis(ccfg.alphas[j], xs[j], p, Y, h));
    const cplx v = tensor_sum(k, ax, p.lambda2() / p.nu, &out.evals);
    if (have_prev) {
      const double dev = std::abs(v - prev);
      if (dev <= ccfg.cfg.rel_tol * std::abs(v)) {
        out.value = v.real();
        out.imag_residual = std::abs(v.imag());
        out.err_est = dev;
        if (out.imag_residual > std::max(ccfg.cfg.rel_tol * std::abs(out.value), 1e-14))
          throw AccuracyError("contour: imaginary residual above tolerance");
        return out;
      }
      out.err_est = dev;
    }
    prev = v;
    have_prev = true;
    h *= 0.5;
  }
  throw ConvergenceError("contour: step halving did not converge", prev.real(), out.err_est);
}

double contour_shift_check(int k, const ModelParams& p, std::span<const double> xs,
                           const ContourConfig& c1, const ContourConfig& c2) {
  const ContourResult r1 = bc_contour_moment(k, p, xs, c1);
  const ContourResult r2 = bc_contour_moment(k, p, xs, c2);
  const double scale = std::max(std::abs(r1.value), std::abs(r2.value));
  if (scale == 0.0) return 0.0;
  return std::abs(r1.value - r2.value) / scale;
}

}  // namespace pam
