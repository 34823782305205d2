#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "pam/errors.hpp"
#include "pam/log_value.hpp"
#include "pam/specfun.hpp"

using namespace pam;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}

TEST_CASE("phi basics") {
  CHECK(phi(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(phi(40.0) - 1.0) < 1e-15);
  CHECK(phi(-40.0) < 1e-300);
  // High-precision value of the defining integral at 1.
  CHECK(rel(phi(1.0), 0.8413447460685429486) < 1e-15);
  CHECK_THROWS_AS(phi(std::nan("")), DomainError);
  CHECK_THROWS_AS(phi(INFINITY), DomainError);
}

TEST_CASE("erf at 1 against brute-force quadrature of the defining integral") {
  const double target = oracle::integrate(
      [](double y) { return 2.0 / std::sqrt(M_PI) * std::exp(-y * y); }, 0.0, 1.0, 1e-15);
  CHECK(rel(pam::erf(1.0), target) < 1e-14);
  CHECK(rel(pam::erf(1.0), 0.8427007929497148693) < 1e-15);
  CHECK(pam::erf(0.0) == 0.0);
  CHECK(pam::erfc(0.0) == 1.0);
}

TEST_CASE("erfc/erf complementarity and std cross-check") {
  for (double x = -6.0; x <= 6.0; x += 0.173) {
    CHECK(std::abs(pam::erf(x) + pam::erfc(x) - 1.0) < 1e-14);
    CHECK(std::abs(pam::erf(x) - std::erf(x)) < 4e-16 + 1e-15 * std::abs(std::erf(x)));
    if (std::erfc(x) > 0) CHECK(rel(pam::erfc(x), std::erfc(x)) < 2e-14);
  }
}

TEST_CASE("erfcx asymptotics and tail") {
  // Leading asymptotic term 1/(x sqrt(pi)).
  CHECK(rel(pam::erfcx(30.0), 1.0 / (30.0 * std::sqrt(M_PI))) < 1e-3);
  // Where erfc is still representable, the definition must hold.
  for (double x : {0.3, 1.0, 3.0, 8.0, 20.0})
    CHECK(rel(pam::erfcx(x), std::exp(x * x) * std::erfc(x)) < 5e-13);
  // Negative side: 2 exp(x^2) - pam::erfcx(-x).
  for (double x : {-0.5, -2.0, -5.0})
    CHECK(rel(pam::erfcx(x), 2.0 * std::exp(x * x) - pam::erfcx(-x)) < 1e-14);
}

TEST_CASE("erfcx in (0,1], strictly decreasing on a 2000-point grid") {
  double prev = pam::erfcx(0.0);
  CHECK(prev == 1.0);
  for (int i = 1; i <= 2000; ++i) {
    const double x = 40.0 * i / 2000.0;
    const double v = pam::erfcx(x);
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("log_erfcx spans the overflow region") {
  CHECK(rel(log_erfcx(2.0), std::log(pam::erfcx(2.0))) < 1e-14);
  // At -40, erfcx = 2 exp(1600) up to a vanishing correction.
  CHECK(rel(log_erfcx(-40.0), 1600.0 + std::log(2.0)) < 1e-14);
  CHECK(std::isfinite(log_erfcx(-500.0)));
}

TEST_CASE("Phi(z) = pam::erfc(-z/sqrt 2)/2 identity on |z| <= 8") {
  for (double z = -8.0; z <= 8.0; z += 0.0625) {
    CHECK(std::abs(phi(z) - 0.5 * pam::erfc(-z / std::sqrt(2.0))) <=
          1e-14 * std::max(1.0, std::abs(phi(z))));
  }
}

TEST_CASE("2 - pam::erfc(x) = 2 Phi(x sqrt 2) on |x| <= 8") {
  for (double x = -8.0; x <= 8.0; x += 0.0625) {
    const double lhs = 2.0 - pam::erfc(x);
    const double rhs = 2.0 * phi(x * std::sqrt(2.0));
    CHECK(std::abs(lhs - rhs) <= 1e-14 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("log_phi matches phi and stays finite far left") {
  for (double x : {-5.0, -1.0, 0.0, 2.0, 7.0})
    CHECK(rel(std::exp(log_phi(x)), phi(x)) < 1e-13);
  CHECK(std::isfinite(log_phi(-1e4)));
  CHECK(log_phi(-1e4) < -4.9e7);
}

TEST_CASE("heat kernel") {
  CHECK(rel(heat_kernel(1.0, 1.0, 0.0), 0.3989422804014327) < 1e-15);
  for (double a : {0.3, 1.7, 4.0})
    CHECK(heat_kernel(0.7, 2.0, a) == heat_kernel(0.7, 2.0, -a));
  CHECK_THROWS_AS(heat_kernel(0.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(heat_kernel(1.0, -1.0, 0.0), DomainError);

  // Unit mass by quadrature.
  const double mass = oracle::integrate(
      [](double x) { return heat_kernel(0.5, 2.0, x); }, -14.0, 14.0, 1e-13);
  CHECK(std::abs(mass - 1.0) < 1e-10);

  // Log form agrees with the plain form wherever the latter is representable.
  for (double x : {0.0, 1.0, 10.0, 35.0})
    CHECK(rel(std::exp(log_heat_kernel(0.5, 2.0, x)), heat_kernel(0.5, 2.0, x)) < 1e-13);
}

TEST_CASE("LogValue round trip and arithmetic") {
  for (double v : {3.25, -0.125, 1e-12, 6.02e14, -97.0}) {
    const LogValue lv = LogValue::from_value(v);
    CHECK(rel(lv.to_value(), v) < 1e-14);
  }
  // At extreme magnitudes the round trip costs |log x| ulps of the exponent.
  for (double v : {1e-200, -1e200, 7e300}) {
    const LogValue lv = LogValue::from_value(v);
    CHECK(rel(lv.to_value(), v) < 4e-13);
  }
  CHECK(LogValue::from_value(0.0).is_zero());
  CHECK(LogValue::from_value(0.0).log_abs == -INFINITY);

  const LogValue a = LogValue::from_value(3.0), b = LogValue::from_value(-2.0);
  CHECK(rel((a * b).to_value(), -6.0) < 1e-14);
  CHECK(rel((a + b).to_value(), 1.0) < 1e-14);
  CHECK(rel((a - b).to_value(), 5.0) < 1e-14);
  CHECK((a + (-a)).is_zero());
  CHECK((a / b).to_value() == doctest::Approx(-1.5).epsilon(1e-14));
  CHECK(b < a);

  // Overflow-scale arithmetic stays finite in log form.
  const LogValue big = LogValue::from_log(800.0);
  CHECK((big * big).log_abs == doctest::Approx(1600.0));
  CHECK((big + big).log_abs == doctest::Approx(800.0 + std::log(2.0)));
}
