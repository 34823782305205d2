#pragma once

#include "pam/log_value.hpp"

namespace pam {

// Arguments of Lambda_n(beta, t) = int_0^inf exp(-s^2/t + beta s) s^n ds.
struct LambdaArgs {
  int n = 0;
  double beta = 0.0;
  double t = 1.0;

  void validate() const;
};

enum class LambdaMode {
  closed_form,  // explicit expressions, tabulated for n <= 3
  recursion,    // Lambda_n = (beta t/2) Lambda_{n-1} + (t(n-1)/2) Lambda_{n-2}
};

double lambda_n(const LambdaArgs& args, LambdaMode mode);
LogValue lambda_n_log(const LambdaArgs& args, LambdaMode mode);

// int_0^inf (a s + b) exp(-c s (s - d)) ds  for c > 0.
double gauss_linear_integral(double a, double b, double c, double d);
LogValue gauss_linear_integral_log(double a, double b, double c, double d);

}  // namespace pam
