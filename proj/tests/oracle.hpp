// Test-local brute-force integration, kept independent of the library's
// quadrature so it can serve as an oracle for it.
#pragma once

#include <cmath>
#include <functional>
#include <random>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

struct AdaptState {
  double tol_floor;
  long evals = 0;
};

inline double adaptive_step(const std::function<double(double)>& f, double a, double b,
                            double tol, double whole, int depth, AdaptState& st) {
  const double m = 0.5 * (a + b);
  const double left = simpson(f, a, m, 8);
  const double right = simpson(f, m, b, 8);
  st.evals += 18;
  const double tol_here = std::max(tol, st.tol_floor);
  if (depth > 30 || st.evals > 4'000'000 ||
      std::abs(left + right - whole) < 15.0 * tol_here)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, m, tol / 2, left, depth + 1, st) +
         adaptive_step(f, m, b, tol / 2, right, depth + 1, st);
}

// Relative-tolerance adaptive Simpson; the scale is taken from a coarse pass.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12) {
  double scale = std::abs(simpson(f, a, b, 64));
  for (int i = 0; i < 64; ++i)
    scale = std::max(scale, std::abs((b - a) * f(a + (b - a) * (i + 0.5) / 64.0)) );
  AdaptState st{rel_tol * std::max(scale, 1e-300)};
  return adaptive_step(f, a, b, st.tol_floor, simpson(f, a, b, 8), 0, st);
}

// Semi-infinite with an explicit cutoff supplied by the caller.
inline double integrate_to_inf(const std::function<double(double)>& f, double cutoff,
                               double rel_tol = 1e-12) {
  return integrate(f, 0.0, cutoff, rel_tol);
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
};

}  // namespace oracle
