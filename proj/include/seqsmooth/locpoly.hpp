#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "seqsmooth/bandwidth.hpp"
#include "seqsmooth/grid.hpp"
#include "seqsmooth/kernels.hpp"
#include "seqsmooth/parallel.hpp"
#include "seqsmooth/smallmat.hpp"

namespace seqsmooth {

// Floor below which a Nadaraya-Watson denominator is treated as carrying
// no local data.
inline constexpr double kDenFloor = 1e-12;

// Per-grid-point state of the sequential local polynomial fit: the
// running inverse of S = ridge*I + sum_t w_t x_t x_t^T and the moment
// vector b = sum_t w_t y_t x_t, where x_t = (1, (X_t-x0), ..., (X_t-x0)^p)
// and w_t is the scaled kernel weight with bandwidth h_t.
struct GridPointState {
  double x0 = 0.0;
  SmallMat s_inv;
  SmallVec b;
  // Whether any weighted update has landed here. The first one is
  // computed in closed form: updating the pristine (1/ridge)-scaled
  // identity through the generic rank-one formula would cancel away
  // half the mantissa.
  bool touched = false;
};

// Sequential local polynomial regression. Every arrival performs a
// rank-one inverse update of each affected grid point's state, O(p^2)
// per point regardless of how many observations came before. The
// intercept of the local fit is the regression estimate.
//
// One writer per estimator; an update may fan out over grid points
// (they share nothing), but readers need a quiesced state.
class SequentialLocPoly {
 public:
  SequentialLocPoly(EvaluationGrid grid, KernelSpec kernel,
                    BandwidthSchedule schedule, int degree,
                    double ridge = 1e-9,
                    ExecPolicy exec = ExecPolicy::Serial);

  // Degree-matched schedule k = 1/(2*degree+3).
  static SequentialLocPoly with_auto_schedule(EvaluationGrid grid,
                                              KernelSpec kernel, double c,
                                              int degree, double ridge = 1e-9,
                                              ExecPolicy exec =
                                                  ExecPolicy::Serial);

  // Folds one (x, y) pair in; rejects non-finite input without touching
  // the state.
  bool observe(double x, double y);

  long n() const { return n_; }
  int degree() const { return degree_; }
  double ridge() const { return ridge_; }
  const EvaluationGrid& grid() const { return grid_; }
  const KernelSpec& kernel() const { return kernel_; }
  const BandwidthSchedule& schedule() const { return schedule_; }

  ExecPolicy exec_policy() const { return exec_; }
  void set_exec_policy(ExecPolicy exec) { exec_ = exec; }

  // Intercept of the local fit at grid point i; requires n >= 1.
  double predict_at(int i) const;

  // Prediction at x: exact at grid points, linear interpolation between
  // them. Throws std::out_of_range outside the grid and
  // EmptyEstimatorError before the first accepted observation.
  double predict(double x) const;

  std::vector<double> predictions() const;

  const GridPointState& state_at(int i) const {
    return states_[static_cast<std::size_t>(i)];
  }

  // Versioned structured-text state dump, enough to resume the stream
  // elsewhere. Only named kernels round-trip.
  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;
  static SequentialLocPoly load(std::istream& in);
  static SequentialLocPoly load_file(const std::string& path);

 private:
  EvaluationGrid grid_;
  KernelSpec kernel_;
  BandwidthSchedule schedule_;
  int degree_;
  double ridge_;
  ExecPolicy exec_;
  std::vector<GridPointState> states_;
  long n_ = 0;
};

// Sequential Nadaraya-Watson estimator (the degree-0 special case kept
// on its own fast path): running kernel-weighted sums of responses and
// weights per grid point.
class SequentialNw {
 public:
  SequentialNw(EvaluationGrid grid, KernelSpec kernel,
               BandwidthSchedule schedule,
               ExecPolicy exec = ExecPolicy::Serial);

  bool observe(double x, double y);

  long n() const { return n_; }
  const EvaluationGrid& grid() const { return grid_; }
  const KernelSpec& kernel() const { return kernel_; }
  const BandwidthSchedule& schedule() const { return schedule_; }

  ExecPolicy exec_policy() const { return exec_; }
  void set_exec_policy(ExecPolicy exec) { exec_ = exec; }

  double num_at(int i) const { return num_[static_cast<std::size_t>(i)]; }
  double den_at(int i) const { return den_[static_cast<std::size_t>(i)]; }

  // num/den at grid point i. Throws LowMassError when den is at or
  // below the floor, i.e. no data ever landed near the point.
  double predict_at(int i) const;

  // Interpolated prediction; both bracketing grid points must carry
  // mass. Throws like predict_at plus std::out_of_range/
  // EmptyEstimatorError.
  double predict(double x) const;

 private:
  EvaluationGrid grid_;
  KernelSpec kernel_;
  BandwidthSchedule schedule_;
  ExecPolicy exec_;
  std::vector<double> num_;
  std::vector<double> den_;
  long n_ = 0;
};

}  // namespace seqsmooth
