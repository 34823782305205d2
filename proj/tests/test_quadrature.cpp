#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "pam/errors.hpp"
#include "pam/quadrature.hpp"

using namespace pam;

TEST_CASE("gaussian reference integrals") {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  const auto g = [](double s) { return std::exp(-s * s); };
  const auto sg = [](double s) { return s * std::exp(-s * s); };
  const QuadResult a = integrate_semi_infinite(g, {0.0, 1.0}, cfg);
  CHECK(a.value == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-12));
  const QuadResult b = integrate_semi_infinite(sg, {0.0, 1.0}, cfg);
  CHECK(b.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(a.err_est <= 1e-10);
}

TEST_CASE("shifted peak with certificate") {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-11;
  // exp(-(s-20)^2/9): mass far from the origin, scale 3.
  const auto f = [](double s) { return std::exp(-(s - 20.0) * (s - 20.0) / 9.0); };
  const QuadResult r = integrate_semi_infinite(f, {20.0, 3.0}, cfg);
  const double exact = 3.0 * std::sqrt(M_PI) / 2.0 * (1.0 + std::erf(20.0 / 3.0));
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-11));
}

TEST_CASE("max_evals produces a convergence error carrying the best estimate") {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  cfg.max_evals = 120;  // far too small for an oscillatory integrand
  const auto f = [](double s) { return std::cos(40.0 * s) * std::exp(-s * s / 64.0); };
  bool threw = false;
  try {
    integrate_semi_infinite(f, {0.0, 8.0}, cfg);
  } catch (const ConvergenceError& e) {
    threw = true;
    CHECK(std::isfinite(e.best));
  }
  CHECK(threw);
}

TEST_CASE("config validation") {
  QuadratureConfig cfg;
  cfg.rel_tol = 0.5;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.max_evals = 10;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("halving rel_tol never drifts away from a 10x tighter reference") {
  const auto f = [](double s) { return std::exp(-s * (s - 3.0)) * (2.0 + std::sin(3.0 * s)); };
  const GaussianDecay decay{1.5, 1.0};
  QuadratureConfig tight;
  tight.rel_tol = 1e-13;
  const double ref = integrate_semi_infinite(f, decay, tight).value;
  // Deviations below the reference's own error floor are unresolvable noise.
  const double floor = 30.0 * tight.rel_tol * std::abs(ref);
  double prev_dev = INFINITY;
  for (double tol : {1e-4, 5e-5, 2.5e-5, 1.25e-5, 6.25e-6, 1e-8, 1e-10}) {
    QuadratureConfig cfg;
    cfg.rel_tol = tol;
    const double dev = std::abs(integrate_semi_infinite(f, decay, cfg).value - ref);
    CHECK(dev <= std::max(1.05 * prev_dev, floor));
    prev_dev = std::max(dev, floor);
  }
}

TEST_CASE("finite interval helper agrees with brute force") {
  const auto f = [](double s) { return std::sin(s) / (1.0 + s * s); };
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  const double mine = integrate_interval(f, 0.0, 10.0, cfg).value;
  const double ref = oracle::integrate(f, 0.0, 10.0, 1e-13);
  CHECK(mine == doctest::Approx(ref).epsilon(1e-11));
}
