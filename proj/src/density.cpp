#include "seqsmooth/density.hpp"

#include <stdexcept>

#include "seqsmooth/errors.hpp"

namespace seqsmooth {

bool SequentialKde::observe(double x) {
  if (!std::isfinite(x)) return false;
  const double h = schedule_.at(n_ + 1);
  const double radius = kernel_.cutoff_radius * h;
  const auto [first, last] = grid_.index_range(x, radius);
  double* sums = sums_.data();

  if (exec_ == ExecPolicy::OpenMP) {
#pragma omp parallel for schedule(static)
    for (int i = first; i < last; ++i)
      sums[i] += scaled_weight_unchecked(kernel_, h, x, grid_.point(i));
  } else {
    for (int i = first; i < last; ++i)
      sums[i] += scaled_weight_unchecked(kernel_, h, x, grid_.point(i));
  }
  ++n_;
  return true;
}

double SequentialKde::value_at(int i) const {
  if (n_ == 0) throw EmptyEstimatorError("SequentialKde: no observations");
  if (i < 0 || i >= grid_.count())
    throw std::out_of_range("SequentialKde: grid index");
  return sums_[static_cast<std::size_t>(i)] / static_cast<double>(n_);
}

std::vector<double> SequentialKde::values() const {
  if (n_ == 0) throw EmptyEstimatorError("SequentialKde: no observations");
  std::vector<double> out(sums_.size());
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < sums_.size(); ++i) out[i] = sums_[i] * inv_n;
  return out;
}

double SequentialKde::eval(double x) const {
  if (n_ == 0) throw EmptyEstimatorError("SequentialKde: no observations");
  const auto loc = grid_.locate(x); // throws out_of_range first
  if (loc.on_point)
    return value_at(loc.frac == 0.0 ? loc.left : loc.left + 1);
  const double a = value_at(loc.left);
  const double b = value_at(loc.left + 1);
  return a + (b - a) * loc.frac;
}

double kde_leading_risk(double curvature_integral, const KernelSpec& kernel,
                        const BandwidthSchedule& schedule, long n) {
  if (!(curvature_integral >= 0.0))
    throw std::invalid_argument(
        "kde_leading_risk: curvature integral must be >= 0");
  if (n < 1) throw std::invalid_argument("kde_leading_risk: n must be >= 1");

  const double sigma2 = kernel_moment(kernel, 2);
  const double c1 = 0.25 * sigma2 * sigma2 * curvature_integral;
  const double c2 = kernel_squared_integral(kernel);

  double sum_h2 = 0.0;
  double sum_inv_h = 0.0;
  for (long t = 1; t <= n; ++t) {
    const double h = schedule.at(t);
    sum_h2 += h * h;
    sum_inv_h += 1.0 / h;
  }
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  return (c1 * sum_h2 * sum_h2 + c2 * sum_inv_h) / nn;
}

}  // namespace seqsmooth
