#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "pam/errors.hpp"
#include "pam/lambda_integrals.hpp"
#include "pam/specfun.hpp"

using namespace pam;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Brute-force Lambda_n by quadrature of the defining integral.
double lambda_oracle(int n, double beta, double t, double tol = 1e-13) {
  const double cutoff = std::max(beta * t, 0.0) + 12.0 * std::sqrt(t) * std::sqrt(1.0 + n);
  return oracle::integrate(
      [&](double s) { return std::pow(s, n) * std::exp(-s * s / t + beta * s); }, 0.0, cutoff,
      tol);
}

}  // namespace

TEST_CASE("pinned values") {
  CHECK(rel(lambda_n({0, 0.0, 1.0}, LambdaMode::closed_form), std::sqrt(M_PI) / 2.0) < 1e-14);
  CHECK(rel(lambda_n({1, 0.0, 1.0}, LambdaMode::closed_form), 0.5) < 1e-14);
  for (double t : {0.2, 1.0, 7.0})
    CHECK(rel(lambda_n({2, 0.0, t}, LambdaMode::closed_form),
              std::sqrt(M_PI) * std::pow(t, 1.5) / 4.0) < 1e-13);
  // Frozen brute-force value of the defining integral.
  CHECK(rel(lambda_n({3, 1.3, 0.7}, LambdaMode::recursion), 1.2056449282996088) < 1e-10);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(lambda_n({0, 0.0, -1.0}, LambdaMode::closed_form), DomainError);
  CHECK_THROWS_AS(lambda_n({-1, 0.0, 1.0}, LambdaMode::closed_form), DomainError);
  CHECK_THROWS_AS(lambda_n({4, 0.0, 1.0}, LambdaMode::closed_form), UnsupportedOrderError);
  CHECK_NOTHROW(lambda_n({4, 0.0, 1.0}, LambdaMode::recursion));
  CHECK_THROWS_AS(gauss_linear_integral(1.0, 1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("closed form vs recursion on a (beta, t) grid") {
  for (int n : {2, 3})
    for (int bi = 0; bi <= 10; ++bi)
      for (int ti = 0; ti <= 12; ++ti) {
        const double beta = -5.0 + bi;
        const double t = 0.01 * std::pow(100.0 / 0.01, ti / 12.0);
        const double c = lambda_n({n, beta, t}, LambdaMode::closed_form);
        const double r = lambda_n({n, beta, t}, LambdaMode::recursion);
        // For beta < 0 both routes subtract nearly equal halves; agreement is
        // limited by that conditioning, not by the algorithms. Bound it from
        // the magnitudes of the closed form's two pieces.
        const double ex = pam::erfcx(-beta * std::sqrt(t) / 2.0);
        const double p_poly =
            (n == 2) ? std::abs(beta) * t * t / 4.0 : t * t / 2.0 + beta * beta * t * t * t / 8.0;
        const double p_erfcx =
            (n == 2) ? std::sqrt(M_PI) * std::pow(t, 1.5) * (beta * beta * t + 2.0) / 8.0 * ex
                     : std::abs(std::sqrt(M_PI) * beta * std::pow(t, 2.5) *
                                (beta * beta * t + 6.0) / 16.0) * ex;
        const double condition = (p_poly + p_erfcx) / std::abs(c);
        CHECK(rel(r, c) < std::max(1e-12, 3e-15 * condition));
      }
}

TEST_CASE("recursion vs brute-force quadrature, n up to 5, 50 random draws") {
  oracle::Rng rng(20240811);
  for (int n = 0; n <= 5; ++n)
    for (int rep = 0; rep < 50; ++rep) {
      const double beta = rng.uniform(-4.0, 4.0);
      const double t = rng.log_uniform(0.02, 20.0);
      const double mine = lambda_n({n, beta, t}, LambdaMode::recursion);
      const double ref = lambda_oracle(n, beta, t);
      CHECK(rel(mine, ref) < 1e-8);
    }
}

TEST_CASE("positivity, including the log variant at overflow scale") {
  oracle::Rng rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = (int)rng.uniform(0.0, 5.999);
    const double beta = rng.uniform(-5.0, 5.0);
    const double t = rng.log_uniform(0.01, 100.0);
    const LogValue v = lambda_n_log({n, beta, t}, LambdaMode::recursion);
    CHECK(v.sign == +1);
  }
  // beta^2 t / 4 ~ 2500: far beyond double range, still finite in log form.
  const LogValue big = lambda_n_log({3, 10.0, 100.0}, LambdaMode::closed_form);
  CHECK(big.sign == +1);
  CHECK(big.log_abs > 2400.0);
  CHECK(std::isfinite(big.log_abs));
}

TEST_CASE("gauss_linear_integral pinned and brute force") {
  CHECK(rel(gauss_linear_integral(0.0, 1.0, 1.0, 0.0), std::sqrt(M_PI) / 2.0) < 1e-14);
  CHECK(rel(gauss_linear_integral(1.0, 0.0, 1.0, 0.0), 0.5) < 1e-14);
  // Frozen brute-force value for (a=2, b=-1, c=0.5, d=3).
  CHECK(rel(gauss_linear_integral(2.0, -1.0, 0.5, 3.0), 16.410286014549557) < 1e-10);

  oracle::Rng rng(99);
  for (int rep = 0; rep < 30; ++rep) {
    const double a = rng.uniform(-3.0, 3.0);
    const double b = rng.uniform(-3.0, 3.0);
    const double c = rng.log_uniform(0.05, 5.0);
    const double d = rng.uniform(-3.0, 3.0);
    const double cutoff = std::max(d, 0.0) + 14.0 / std::sqrt(c);
    const double ref = oracle::integrate(
        [&](double s) { return (a * s + b) * std::exp(-c * s * (s - d)); }, 0.0, cutoff, 1e-13);
    CHECK(std::abs(gauss_linear_integral(a, b, c, d) - ref) <
          1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("gauss_linear_integral recombines as a Lambda_1/Lambda_0 mix") {
  oracle::Rng rng(424242);
  for (int rep = 0; rep < 40; ++rep) {
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    const double c = rng.log_uniform(0.1, 4.0);
    const double d = rng.uniform(-2.0, 2.0);
    const double tau = 1.0 / c, beta = c * d;
    const double combo = a * lambda_n({1, beta, tau}, LambdaMode::closed_form) +
                         b * lambda_n({0, beta, tau}, LambdaMode::closed_form);
    const double direct = gauss_linear_integral(a, b, c, d);
    CHECK(std::abs(direct - combo) < 1e-12 * std::max(1.0, std::abs(combo)));
  }
}
