#include "seqsmooth/kernels.hpp"

#include <limits>
#include <vector>

#include "seqsmooth/smallmat.hpp"

namespace seqsmooth {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

// Integration domain for infinite-support kernels. At 10 the Gaussian
// integrand is below 1e-21 even against u^12.
constexpr double kGaussianQuadratureRadius = 10.0;

double quadrature_radius(const KernelSpec& k) {
  return k.compact_support() ? k.support_radius : kGaussianQuadratureRadius;
}

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double fa, double b, double fb, double m, double fm,
                        double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                          depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                          depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (!(a < b)) return 0.0;
  // Seed with a fixed panel count so narrow features are not missed by
  // the first Simpson estimate.
  const int panels = 32;
  const double w = (b - a) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double x0 = a + i * w;
    const double x1 = (i == panels - 1) ? b : x0 + w;
    const double xm = 0.5 * (x0 + x1);
    const double f0 = f(x0);
    const double f1 = f(x1);
    const double fm = f(xm);
    const double whole = simpson(x0, f0, x1, f1, fm);
    total += adaptive_simpson(f, x0, f0, x1, f1, xm, fm, whole, tol / panels,
                              48);
  }
  return total;
}

KernelSpec gaussian_kernel() {
  KernelSpec k;
  k.name = "gaussian";
  k.evaluate = [](double u) { return kInvSqrt2Pi * std::exp(-0.5 * u * u); };
  k.support_radius = std::numeric_limits<double>::infinity();
  k.cutoff_radius = 6.0; // kernel value < 1e-8 beyond
  k.order = 2;
  return k;
}

KernelSpec epanechnikov_kernel() {
  KernelSpec k;
  k.name = "epanechnikov";
  k.evaluate = [](double u) {
    return std::fabs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
  };
  k.support_radius = 1.0;
  k.cutoff_radius = 1.0;
  k.order = 2;
  return k;
}

KernelSpec kernel_by_name(const std::string& name) {
  if (name == "gaussian") return gaussian_kernel();
  if (name == "epanechnikov") return epanechnikov_kernel();
  if (name == "epanechnikov-order4")
    return make_higher_order_kernel(epanechnikov_kernel(), 4);
  throw std::invalid_argument("unknown kernel: " + name);
}

double eval_kernel(const KernelSpec& k, double u) {
  if (!std::isfinite(u))
    throw std::domain_error("eval_kernel: non-finite argument");
  return k.evaluate(u);
}

double scaled_kernel_weight(const KernelSpec& k, double h, double x,
                            double x0) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::domain_error("scaled_kernel_weight: bandwidth must be > 0");
  if (!std::isfinite(x) || !std::isfinite(x0))
    throw std::domain_error("scaled_kernel_weight: non-finite point");
  return scaled_weight_unchecked(k, h, x, x0);
}

double kernel_moment(const KernelSpec& k, int j) {
  if (j < 0) throw std::invalid_argument("kernel_moment: j must be >= 0");
  const double r = quadrature_radius(k);
  const auto f = [&](double u) { return std::pow(u, j) * k.evaluate(u); };
  const double value = integrate(f, -r, r, 1e-10);
  if (!std::isfinite(value))
    throw std::domain_error("kernel_moment: moment does not converge");
  return value;
}

double kernel_squared_integral(const KernelSpec& k) {
  const double r = quadrature_radius(k);
  return integrate([&](double u) { const double v = k.evaluate(u); return v * v; },
                   -r, r, 1e-10);
}

KernelSpec make_higher_order_kernel(const KernelSpec& base, int target_order) {
  if (target_order < 2 || target_order % 2 != 0)
    throw std::invalid_argument(
        "make_higher_order_kernel: target order must be even and >= 2");
  if (target_order == base.order) return base;
  const int terms = (target_order - 2) / 2 + 1; // coefficients of 1, u^2, ...
  if (terms > kMaxBasis)
    throw std::invalid_argument("make_higher_order_kernel: order too large");

  // Even base moments up to u^(2*(terms-1) + target_order - 2).
  std::vector<double> mu(static_cast<std::size_t>(4 * terms - 2), 0.0);
  for (std::size_t m = 0; m < mu.size(); ++m)
    mu[m] = kernel_moment(base, static_cast<int>(2 * m));

  // Row r constrains moment 2r of the product kernel: sum_i a_i mu_{i+r}
  // equals 1 for r = 0 and 0 otherwise.
  SmallMat sys;
  sys.n = terms;
  SmallVec rhs = SmallVec::zero(terms);
  rhs[0] = 1.0;
  for (int r = 0; r < terms; ++r)
    for (int i = 0; i < terms; ++i)
      sys.at(r, i) = mu[static_cast<std::size_t>(i + r)];

  SmallVec coeff;
  if (!solve_linear(sys, rhs, coeff))
    throw std::runtime_error(
        "make_higher_order_kernel: singular moment system");

  std::vector<double> poly(static_cast<std::size_t>(terms));
  for (int i = 0; i < terms; ++i) poly[static_cast<std::size_t>(i)] = coeff[i];

  KernelSpec k;
  k.name = base.name + "-order" + std::to_string(target_order);
  const auto base_eval = base.evaluate;
  k.evaluate = [poly, base_eval](double u) {
    const double u2 = u * u;
    double p = 0.0;
    for (std::size_t i = poly.size(); i-- > 0;) p = p * u2 + poly[i];
    return p * base_eval(u);
  };
  k.support_radius = base.support_radius;
  k.cutoff_radius = base.cutoff_radius;
  k.order = target_order;

  // Verify the construction by quadrature before handing it out.
  if (std::fabs(kernel_moment(k, 0) - 1.0) > 1e-8)
    throw std::runtime_error("make_higher_order_kernel: normalization failed");
  for (int j = 2; j < target_order; j += 2)
    if (std::fabs(kernel_moment(k, j)) > 1e-8)
      throw std::runtime_error(
          "make_higher_order_kernel: moment cancellation failed");
  if (std::fabs(kernel_moment(k, target_order)) < 1e-6)
    throw std::runtime_error(
        "make_higher_order_kernel: target moment vanished");
  return k;
}

}  // namespace seqsmooth
