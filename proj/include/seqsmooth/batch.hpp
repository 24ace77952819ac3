#pragma once

#include <span>

#include "seqsmooth/kernels.hpp"
#include "seqsmooth/observation.hpp"

namespace seqsmooth {

// Classical fixed-bandwidth local polynomial fit, the baseline the
// sequential estimators are measured against. Refitting costs O(n d^2)
// per evaluation point, which is exactly what the sequential updates
// avoid.
//
// Weights enter unscaled as K((x - x0)/h): with one bandwidth for the
// whole sample the least-squares solution is invariant to the weight
// scale, and the unscaled form keeps the ridge negligible for any h,
// including the h -> infinity global-fit limit.
struct BatchFitConfig {
  int degree = 1;
  double h = 0.1;
  KernelSpec kernel;
  double ridge = 1e-9;
};

// Intercept of the ridge-stabilized weighted least-squares fit at x0.
// Never fails thanks to the ridge; when the total kernel mass at x0 is
// below the denominator floor, *low_mass (if given) is set as a
// conditioning warning.
double batch_locpoly_fit(std::span<const Observation> data,
                         const BatchFitConfig& cfg, double x0,
                         bool* low_mass = nullptr);

// Leave-one-out cross-validation over bandwidth constants: returns the
// candidate c minimizing sum_i (y_i - m_{-i}(x_i))^2 where m_{-i} is the
// batch fit with h = c * n^(-n_exponent) on the data without point i.
// Ties break toward the smallest candidate. O(n^2) per candidate.
double loo_cv_constant(std::span<const Observation> data,
                       std::span<const double> candidates, int degree,
                       const KernelSpec& kernel, double n_exponent,
                       double ridge = 1e-9);

}  // namespace seqsmooth
