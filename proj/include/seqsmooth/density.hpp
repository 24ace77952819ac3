#pragma once

#include <vector>

#include "seqsmooth/bandwidth.hpp"
#include "seqsmooth/grid.hpp"
#include "seqsmooth/kernels.hpp"
#include "seqsmooth/parallel.hpp"

namespace seqsmooth {

// Sequential kernel density estimator on a grid. Observation t is
// smoothed with its own bandwidth h_t, so each arrival touches only the
// grid points the kernel reaches and never triggers a refit:
//
//   f_n(x) = (1/n) * sum_t (1/h_t) K((x - X_t)/h_t)
//
// The raw weight sums are stored; the division by n happens on read.
// One writer per estimator; an update may fan out over grid points
// (they share nothing), but readers need a quiesced state.
class SequentialKde {
 public:
  SequentialKde(EvaluationGrid grid, KernelSpec kernel,
                BandwidthSchedule schedule, ExecPolicy exec = ExecPolicy::Serial)
      : grid_(grid),
        kernel_(std::move(kernel)),
        schedule_(schedule),
        exec_(exec),
        sums_(static_cast<std::size_t>(grid.count()), 0.0) {}

  // Folds one observation in. Non-finite input is rejected and the
  // state left untouched; returns whether the point was accepted.
  bool observe(double x);

  long n() const { return n_; }
  const EvaluationGrid& grid() const { return grid_; }
  const KernelSpec& kernel() const { return kernel_; }
  const BandwidthSchedule& schedule() const { return schedule_; }

  ExecPolicy exec_policy() const { return exec_; }
  void set_exec_policy(ExecPolicy exec) { exec_ = exec; }

  // Density value at grid point i; requires n >= 1.
  double value_at(int i) const;
  std::vector<double> values() const;

  // Interpolated density at x; exact on grid points. Throws
  // std::out_of_range outside the grid and EmptyEstimatorError when no
  // observation has been accepted yet.
  double eval(double x) const;

 private:
  EvaluationGrid grid_;
  KernelSpec kernel_;
  BandwidthSchedule schedule_;
  ExecPolicy exec_;
  std::vector<double> sums_;
  long n_ = 0;
};

// Leading-order risk of the sequential density estimator:
//   (1/n^2) [ c1 (sum_t h_t^2)^2 + c2 sum_t 1/h_t ]
// with c1 = (1/4) (sigma_K^2)^2 * curvature_integral and c2 = int K^2.
// The curvature integral int f''(x)^2 dx is supplied by the caller
// (known analytically for the test densities). Partial sums are exact.
double kde_leading_risk(double curvature_integral, const KernelSpec& kernel,
                        const BandwidthSchedule& schedule, long n);

}  // namespace seqsmooth
