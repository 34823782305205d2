#include "pam/front.hpp"

#include <algorithm>
#include <cmath>

#include "pam/errors.hpp"
#include "pam/moments.hpp"

namespace pam {

double rate_function(const ModelParams& p3, double alpha) {
  p3.validate();
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw DomainError("rate_function: alpha must be nonnegative");
  return p3.lambda4() / p3.nu - 3.0 * alpha * alpha / (2.0 * p3.nu);
}

double growth_index(int p, double lambda) {
  if (p < 2) throw DomainError("growth_index: order must be >= 2");
  if (!std::isfinite(lambda)) throw DomainError("growth_index: lambda must be finite");
  return std::sqrt((double(p) * p - 1.0) / 12.0) * lambda * lambda;
}

FrontResult empirical_front(const ModelParams& p3, std::span<const double> t_list,
                            std::span<const double> alpha_grid, const QuadratureConfig& cfg) {
  p3.validate();
  if (t_list.empty()) throw DomainError("empirical_front: t_list must be nonempty");
  if (!std::is_sorted(t_list.begin(), t_list.end()) || !(t_list.front() > 0.0))
    throw DomainError("empirical_front: t_list must be ascending and positive");
  if (alpha_grid.empty() || !std::is_sorted(alpha_grid.begin(), alpha_grid.end()) ||
      !(alpha_grid.front() >= 0.0))
    throw DomainError("empirical_front: alpha_grid must be ascending and nonnegative");

  const auto extrapolated_rate = [&](double alpha) {
    std::vector<double> ys(t_list.size());
    for (size_t i = 0; i < t_list.size(); ++i) {
      ModelParams q = p3;
      q.t = t_list[i];
      ys[i] = third_moment(q, alpha * t_list[i], cfg).log_value.log_abs / t_list[i];
    }
    if (ys.size() == 1) return ys[0];
    // Exact r_inf + c/t fit through the two most asymptotic samples.
    const size_t n = ys.size();
    const double t1 = t_list[n - 2], t2 = t_list[n - 1];
    return (ys[n - 1] * t2 - ys[n - 2] * t1) / (t2 - t1);
  };

  FrontResult out;
  out.alpha_grid.assign(alpha_grid.begin(), alpha_grid.end());
  out.rate_values.resize(alpha_grid.size());
  for (size_t i = 0; i < alpha_grid.size(); ++i)
    out.rate_values[i] = extrapolated_rate(alpha_grid[i]);

  size_t cross = alpha_grid.size();
  for (size_t i = 0; i + 1 < alpha_grid.size(); ++i) {
    if (out.rate_values[i] > 0.0 && out.rate_values[i + 1] <= 0.0) {
      cross = i;
      break;
    }
  }
  if (cross == alpha_grid.size())
    throw FrontNotBracketedError("empirical_front: rate does not change sign on the grid");

  double lo = alpha_grid[cross], hi = alpha_grid[cross + 1];
  const double tol = std::max((hi - lo) * 1e-3, 1e-12);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (extrapolated_rate(mid) > 0.0 ? lo : hi) = mid;
  }
  out.lambda_p = 0.5 * (lo + hi);
  return out;
}

}  // namespace pam
