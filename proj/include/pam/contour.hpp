#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pam/model.hpp"
#include "pam/quadrature.hpp"

namespace pam {

// Vertical-line contour configuration for the k-fold moment integral.
// Contours are alpha_j + i R, ordered so that alpha_A - alpha_B > lambda^2/nu
// strictly for every pair A < B (keeps every pole factor off the contours and
// the auxiliary exponential representation convergent).
struct ContourConfig {
  std::vector<double> alphas;
  double half_height = 0.0;  // truncation Y of Im z; 0 requests the decay-bound choice
  int nodes_per_unit = 0;    // trapezoid density; 0 requests the aliasing-bound choice
  QuadratureConfig cfg;

  static ContourConfig defaults_for(int k, const ModelParams& p);
  void validate(int k, const ModelParams& p) const;
};

struct ContourResult {
  double value = 0.0;          // real part
  double imag_residual = 0.0;  // |imaginary part|, must stay below tolerance
  double err_est = 0.0;        // step-halving deviation
  std::int64_t evals = 0;
};

// Direct numerical evaluation of the k-fold vertical-line integral for the
// k-point moment, k in {2, 3}. xs must already be sorted ascending; unsorted
// input is rejected, never silently sorted.
ContourResult bc_contour_moment(int k, const ModelParams& p, std::span<const double> xs,
                                const ContourConfig& ccfg);

// Max relative deviation between two admissible contour placements; by
// contour deformation this should vanish to quadrature accuracy.
double contour_shift_check(int k, const ModelParams& p, std::span<const double> xs,
                           const ContourConfig& c1, const ContourConfig& c2);

}  // namespace pam
