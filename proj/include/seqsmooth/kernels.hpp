#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace seqsmooth {

// A symmetric smoothing kernel with unit integral. `order` is the
// smallest even j >= 2 whose moment integral u^j K(u) du is nonzero;
// the built-in kernels have order 2, constructed kernels can be higher.
//
// `cutoff_radius` is the radius actually used when accumulating grid
// weights: the exact support for compact kernels, and 6 for the
// Gaussian, beyond which the kernel value is below 1e-8. evaluate()
// itself is never truncated.
struct KernelSpec {
  std::string name;
  std::function<double(double)> evaluate;
  double support_radius = 0.0; // +inf for infinite support
  double cutoff_radius = 0.0;
  int order = 2;

  double operator()(double u) const { return evaluate(u); }
  bool compact_support() const { return std::isfinite(support_radius); }
};

KernelSpec gaussian_kernel();
KernelSpec epanechnikov_kernel();

// Lookup by the names accepted in configs and CLI flags:
// "gaussian", "epanechnikov", "epanechnikov-order4".
KernelSpec kernel_by_name(const std::string& name);

// K(u) with argument validation; non-finite u is a domain error.
double eval_kernel(const KernelSpec& k, double u);

// The scaled weight (1/h) K((x - x0)/h) used by every estimator.
// Returns exactly 0 beyond the kernel's cutoff radius so that
// incremental updates and direct-sum evaluations agree bit for bit.
double scaled_kernel_weight(const KernelSpec& k, double h, double x, double x0);

// Unvalidated core of scaled_kernel_weight; update loops call this after
// validating their inputs once per observation. Keeping a single weight
// computation is what makes the incremental and direct-sum routes
// bit-identical.
inline double scaled_weight_unchecked(const KernelSpec& k, double h, double x,
                                      double x0) {
  const double u = (x - x0) / h;
  if (std::fabs(u) > k.cutoff_radius) return 0.0;
  return k.evaluate(u) / h;
}

// Unscaled local weight K((x - x0)/h), same cutoff rule. Uniform-
// bandwidth least squares is invariant to the weight scale, so batch
// fits use this form; it keeps the ridge negligible even as h grows.
inline double unscaled_weight_unchecked(const KernelSpec& k, double h,
                                        double x, double x0) {
  const double u = (x - x0) / h;
  if (std::fabs(u) > k.cutoff_radius) return 0.0;
  return k.evaluate(u);
}

// Numeric moment integral u^j K(u) du, absolute accuracy 1e-8 or better.
double kernel_moment(const KernelSpec& k, int j);

// Integral of K(u)^2, the variance constant of kernel estimators.
double kernel_squared_integral(const KernelSpec& k);

// Builds P(u) * base(u) with P an even polynomial of degree
// target_order - 2 chosen so the result integrates to 1 and all even
// moments below target_order vanish. Moments are re-verified by
// quadrature; a singular moment system is a construction error.
KernelSpec make_higher_order_kernel(const KernelSpec& base, int target_order);

// Adaptive Simpson quadrature on [a, b], also used for the moment
// integrals above.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10);

}  // namespace seqsmooth
