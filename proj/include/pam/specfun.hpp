#pragma once

#include "pam/log_value.hpp"

namespace pam {

// Error function family. Rational (near-minimax) approximations good to a
// couple of ulp across the double range; erfcx is evaluated directly so that
// exp(x^2)*erfc(x) products never materialize an overflowing factor.
double erf(double x);
double erfc(double x);
double erfcx(double x);

// log(erfcx(x)), finite for every finite x (erfcx overflows below x ~ -26.6).
double log_erfcx(double x);

// Standard normal CDF and its stable logarithm.
double phi(double x);
double log_phi(double x);

// Gaussian propagator (2 pi nu t)^{-1/2} exp(-x^2 / (2 nu t)).
double heat_kernel(double nu, double t, double x);
double log_heat_kernel(double nu, double t, double x);
LogValue heat_kernel_log(double nu, double t, double x);

}  // namespace pam
