#include "pam/specfun.hpp"

#include <cmath>
#include <limits>

#include "pam/errors.hpp"

namespace pam {
namespace {

// Rational Chebyshev approximations of Cody (Math. Comp. 23, 1969),
// as distributed in netlib specfun/calerf. Three regimes:
//   |x| <= 0.46875          erf(x)   = x * R_a(x^2)
//   0.46875 < |x| <= 4      erfcx(x) = R_c(x)
//   |x| > 4                 erfcx(x) = (1/sqrt(pi) - R_p(1/x^2)/x^2) / x
constexpr double kA[5] = {3.16112374387056560, 1.13864154151050156e2,
                          3.77485237685302021e2, 3.20937758913846947e3,
                          1.85777706184603153e-1};
constexpr double kB[4] = {2.36012909523441209e1, 2.44024637934444173e2,
                          1.28261652607737228e3, 2.84423683343917062e3};
constexpr double kC[9] = {5.64188496988670089e-1, 8.88314979438837594,
                          6.61191906371416295e1, 2.98635138197400131e2,
                          8.81952221241769090e2, 1.71204761263407058e3,
                          2.05107837782607147e3, 1.23033935479799725e3,
                          2.15311535474403846e-8};
constexpr double kD[8] = {1.57449261107098347e1, 1.17693950891312499e2,
                          5.37181101862009858e2, 1.62138957456669019e3,
                          3.29079923573345963e3, 4.36261909014324716e3,
                          3.43936767414372164e3, 1.23033935480374942e3};
constexpr double kP[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                          1.25781726111229246e-1, 1.60837851487422766e-2,
                          6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double kQ[5] = {2.56852019228982242, 1.87295284992346047,
                          5.27905102951428412e-1, 6.05183413124413191e-2,
                          2.33520497626869185e-3};

constexpr double kInvSqrtPi = 5.6418958354775628695e-1;
constexpr double kThresh = 0.46875;
constexpr double kXSmall = 1.11e-16;
constexpr double kXBig = 26.543;       // erfc underflows beyond this
constexpr double kXNeg = -26.628;      // erfcx overflows below this
constexpr double kXHuge = 6.71e7;      // erfcx(x) == 1/(x sqrt(pi)) beyond this
constexpr double kXMax = 2.53e307;

enum class Kind { Erf, Erfc, Erfcx };

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) throw DomainError(std::string(who) + ": non-finite argument");
}

// exp(-y^2) evaluated as exp(-q^2) exp(-(y-q)(y+q)) with q = trunc(16 y)/16,
// which keeps the argument of the big exponential exactly representable.
double exp_neg_sq(double y) {
  const double q = std::trunc(y * 16.0) / 16.0;
  const double del = (y - q) * (y + q);
  return std::exp(-q * q) * std::exp(-del);
}

double calerf(double x, Kind kind) {
  const double y = std::abs(x);
  double result;

  if (y <= kThresh) {
    const double ysq = (y > kXSmall) ? y * y : 0.0;
    double xnum = kA[4] * ysq;
    double xden = ysq;
    for (int i = 0; i < 3; ++i) {
      xnum = (xnum + kA[i]) * ysq;
      xden = (xden + kB[i]) * ysq;
    }
    const double erf_val = x * (xnum + kA[3]) / (xden + kB[3]);
    switch (kind) {
      case Kind::Erf: return erf_val;
      case Kind::Erfc: return 1.0 - erf_val;
      case Kind::Erfcx: return std::exp(ysq) * (1.0 - erf_val);
    }
  }

  if (y <= 4.0) {
    double xnum = kC[8] * y;
    double xden = y;
    for (int i = 0; i < 7; ++i) {
      xnum = (xnum + kC[i]) * y;
      xden = (xden + kD[i]) * y;
    }
    result = (xnum + kC[7]) / (xden + kD[7]);  // erfcx(y)
    if (kind != Kind::Erfcx) result *= exp_neg_sq(y);
  } else {
    result = 0.0;
    if (y < kXBig || (kind == Kind::Erfcx && y < kXMax)) {
      if (y >= kXHuge) {
        result = kInvSqrtPi / y;
      } else {
        const double ysq = 1.0 / (y * y);
        double xnum = kP[5] * ysq;
        double xden = ysq;
        for (int i = 0; i < 4; ++i) {
          xnum = (xnum + kP[i]) * ysq;
          xden = (xden + kQ[i]) * ysq;
        }
        result = ysq * (xnum + kP[4]) / (xden + kQ[4]);
        result = (kInvSqrtPi - result) / y;
      }
      if (kind != Kind::Erfcx) result *= exp_neg_sq(y);
    }
  }

  switch (kind) {
    case Kind::Erf:
      return (x < 0.0) ? -(0.5 - result) - 0.5 : (0.5 - result) + 0.5;
    case Kind::Erfc:
      return (x < 0.0) ? 2.0 - result : result;
    case Kind::Erfcx:
      if (x < 0.0) {
        if (x < kXNeg) return std::numeric_limits<double>::infinity();
        const double q = std::trunc(16.0 * x) / 16.0;
        const double del = (x - q) * (x + q);
        return 2.0 * std::exp(q * q) * std::exp(del) - result;
      }
      return result;
  }
  return result;  // unreachable
}

}  // namespace

double erf(double x) {
  require_finite(x, "erf");
  return calerf(x, Kind::Erf);
}

double erfc(double x) {
  require_finite(x, "erfc");
  return calerf(x, Kind::Erfc);
}

double erfcx(double x) {
  require_finite(x, "erfcx");
  return calerf(x, Kind::Erfcx);
}

double log_erfcx(double x) {
  require_finite(x, "log_erfcx");
  if (x >= 0.0) return std::log(calerf(x, Kind::Erfcx));
  // erfcx(x) = 2 exp(x^2) - erfcx(-x); pull the exp(x^2) out front.
  const double tail = std::exp(-x * x) * calerf(-x, Kind::Erfcx);
  return x * x + std::log(2.0 - tail);
}

double phi(double x) {
  require_finite(x, "phi");
  return 0.5 * calerf(-x / std::sqrt(2.0), Kind::Erfc);
}

double log_phi(double x) {
  require_finite(x, "log_phi");
  const double z = -x / std::sqrt(2.0);
  return log_erfcx(z) - z * z - std::log(2.0);
}

double heat_kernel(double nu, double t, double x) {
  if (!(nu > 0.0) || !(t > 0.0) || !std::isfinite(x))
    throw DomainError("heat_kernel: need nu > 0, t > 0, finite x");
  return std::exp(-x * x / (2.0 * nu * t)) / std::sqrt(2.0 * M_PI * nu * t);
}

double log_heat_kernel(double nu, double t, double x) {
  if (!(nu > 0.0) || !(t > 0.0) || !std::isfinite(x))
    throw DomainError("heat_kernel: need nu > 0, t > 0, finite x");
  return -x * x / (2.0 * nu * t) - 0.5 * std::log(2.0 * M_PI * nu * t);
}

LogValue heat_kernel_log(double nu, double t, double x) {
  return LogValue::from_log(log_heat_kernel(nu, t, x));
}

}  // namespace pam
