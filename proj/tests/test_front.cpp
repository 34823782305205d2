#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "pam/errors.hpp"
#include "pam/front.hpp"
#include "pam/moments.hpp"

using namespace pam;

TEST_CASE("rate function pinned values") {
  CHECK(rate_function({1.0, 1.0, 1.0}, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  const double zero_at = std::sqrt(2.0 / 3.0);
  CHECK(std::abs(rate_function({1.0, 1.0, 1.0}, zero_at)) < 1e-13);
  CHECK(std::abs(rate_function({2.0, 1.0, 1.0}, zero_at)) < 1e-13);  // zero is nu-free
  CHECK(rate_function({1.0, 0.0, 1.0}, 1.0) == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK_THROWS_AS(rate_function({1.0, 1.0, 1.0}, -0.1), DomainError);
}

TEST_CASE("growth index values, monotonicity, exact quadratic scaling") {
  CHECK(growth_index(2, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(growth_index(3, 1.0) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
  CHECK(growth_index(5, 0.0) == 0.0);
  CHECK_THROWS_AS(growth_index(1, 1.0), DomainError);
  for (int p = 2; p < 8; ++p) CHECK(growth_index(p + 1, 1.3) > growth_index(p, 1.3));
  for (double c : {0.5, 2.0, 3.7}) {
    const double lhs = growth_index(4, c * 1.1);
    const double rhs = c * c * growth_index(4, 1.1);
    CHECK(std::abs(lhs - rhs) <= 1e-14 * rhs);
  }
  // rate_function crosses zero exactly at the order-3 growth index.
  for (double lam : {0.3, 1.0, 1.7}) {
    const ModelParams p{0.7, lam, 1.0};
    CHECK(std::abs(rate_function(p, growth_index(3, lam))) < 1e-13 * std::max(1.0, p.lambda4()));
  }
}

TEST_CASE("empirical front recovers the transition velocity") {
  const ModelParams p{1.0, 1.0, 10.0};  // t field unused by empirical_front
  const std::array<double, 3> ts{10.0, 20.0, 40.0};
  std::vector<double> grid;
  for (double a = 0.0; a <= 1.2 + 1e-12; a += 0.01) grid.push_back(a);
  QuadratureConfig cfg;
  const FrontResult fr = empirical_front(p, ts, grid, cfg);
  CHECK(std::abs(fr.lambda_p - std::sqrt(2.0 / 3.0)) < 0.01);
  CHECK(fr.p == 3);
  CHECK(fr.rate_values.size() == grid.size());
  // rates strictly decreasing in alpha
  for (size_t i = 0; i + 1 < fr.rate_values.size(); ++i)
    CHECK(fr.rate_values[i + 1] < fr.rate_values[i]);
  // extrapolated rate at alpha = 0 close to the analytic limit rate
  CHECK(std::abs(fr.rate_values.front() - asymptotic_rate(3, p)) < 0.02);
}

TEST_CASE("quadratic-in-alpha structure at fixed t") {
  const ModelParams base{1.0, 1.0, 5.0};
  QuadratureConfig cfg;
  const double ref = third_moment(base, 0.0, cfg).log_value.log_abs / base.t;
  for (double a : {0.2, 0.5, 0.9}) {
    const double y = third_moment(base, a * base.t, cfg).log_value.log_abs / base.t;
    CHECK(std::abs(y + 1.5 * a * a / base.nu - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("no noise: all positive-velocity rates are negative, front not bracketed") {
  const ModelParams p{1.0, 0.0, 1.0};
  const std::array<double, 2> ts{10.0, 20.0};
  const std::vector<double> grid{0.0, 0.1, 0.4, 0.8};
  QuadratureConfig cfg;
  CHECK_THROWS_AS(empirical_front(p, ts, grid, cfg), FrontNotBracketedError);
  // the rates themselves: nonpositive for alpha > 0
  for (double a : {0.1, 0.4, 0.8}) {
    ModelParams q{1.0, 0.0, 20.0};
    const double y2 = third_moment(q, a * 20.0, cfg).log_value.log_abs / 20.0;
    q.t = 10.0;
    const double y1 = third_moment(q, a * 10.0, cfg).log_value.log_abs / 10.0;
    CHECK((y2 * 20.0 - y1 * 10.0) / 10.0 <= 0.0);
  }
}

TEST_CASE("argument validation") {
  QuadratureConfig cfg;
  const std::vector<double> grid{0.0, 0.5};
  CHECK_THROWS_AS(empirical_front({1, 1, 1}, std::vector<double>{}, grid, cfg), DomainError);
  CHECK_THROWS_AS(empirical_front({1, 1, 1}, std::vector<double>{3.0, 1.0}, grid, cfg),
                  DomainError);
  CHECK_THROWS_AS(
      empirical_front({1, 1, 1}, std::vector<double>{1.0, 2.0}, std::vector<double>{0.5, 0.1}, cfg),
      DomainError);
}
