#pragma once

#include <span>
#include <vector>

#include "pam/model.hpp"
#include "pam/quadrature.hpp"

namespace pam {

class FrontNotBracketedError : public std::runtime_error {
 public:
  explicit FrontNotBracketedError(const std::string& msg) : std::runtime_error(msg) {}
};

// Rate-function samples over a velocity grid and the located transition.
struct FrontResult {
  std::vector<double> alpha_grid;
  std::vector<double> rate_values;  // extrapolated t->inf rate per velocity
  double lambda_p = 0.0;            // zero crossing of the rate
  int p = 3;                        // moment order
};

// Limit exponential growth rate of the third moment along rays |x| = alpha t:
// lambda^4/nu - 3 alpha^2 / (2 nu).
double rate_function(const ModelParams& p3, double alpha);

// Critical velocity of order p: sqrt((p^2 - 1)/12) lambda^2.
double growth_index(int p, double lambda);

// Locates the transition velocity numerically from finite-time third moments:
// per velocity, (1/t) log M3(t, alpha t) is evaluated over t_list and the
// t -> infinity limit is read off from an r_inf + c/t fit through the two
// largest times; the zero crossing is then bisected.
FrontResult empirical_front(const ModelParams& p3, std::span<const double> t_list,
                            std::span<const double> alpha_grid, const QuadratureConfig& cfg);

}  // namespace pam
