#pragma once

#include <span>
#include <vector>

#include "seqsmooth/smoother.hpp"

namespace seqsmooth {

struct AdditiveConfig {
  double tol = 1e-6; // max-norm residual change that counts as converged
  int max_iter = 20; // inner relaxation sweeps per observation
};

// Sequential backfitting for additive models: an intercept kept as a
// running mean plus one sequential smoother per covariate, each
// mean-centered over its grid after every committed update.
//
// Each observation runs an inner relaxation loop: scratch copies of the
// committed components absorb the current residuals (the first pass
// starts from zero residuals), partial residuals are recomputed
// coordinate by coordinate until the residual vector stops moving, and
// only then are the committed components updated with the converged
// residuals.
class AdditiveModel {
 public:
  AdditiveModel(std::vector<Smoother> components, AdditiveConfig cfg = {});

  // Local polynomial components on a shared grid with the k = 1/5
  // schedule. Degree 0 (kernel regression) is the default: its values
  // are convex combinations of the residual targets, which keeps the
  // relaxation bounded. Degree >= 1 components can extrapolate
  // arbitrarily steep local fits into the centering mean when two
  // design points land close together, and the resulting feedback
  // diverges; they remain available for short streams.
  static AdditiveModel locpoly_components(int dimension,
                                          const EvaluationGrid& grid,
                                          const KernelSpec& kernel, double c,
                                          AdditiveConfig cfg = {},
                                          int degree = 0);

  int dimension() const { return static_cast<int>(components_.size()); }
  long step() const { return t_; }
  double intercept() const { return m0_; }

  long nonconverged_steps() const { return nonconverged_; }
  bool last_step_converged() const { return last_converged_; }
  const AdditiveConfig& config() const { return cfg_; }

  // Folds one observation in. Returns false (state untouched) when the
  // input is non-finite or a coordinate falls outside its component's
  // grid. A step whose inner loop hits max_iter still commits, with the
  // non-convergence counter bumped.
  bool observe(std::span<const double> x, double y);

  // m0 + sum of centered component values; throws std::out_of_range on
  // out-of-range coordinates and EmptyEstimatorError before any data.
  double predict(std::span<const double> x) const;

  // Centered value of component j at xj.
  double component_value(int j, double xj) const;

  const Smoother& component(int j) const {
    return components_[static_cast<std::size_t>(j)].model;
  }
  double component_offset(int j) const {
    return components_[static_cast<std::size_t>(j)].offset;
  }

 private:
  struct Component {
    Smoother model;
    double offset = 0.0; // grid mean of the raw smoother, kept at 0 net
  };

  static double centered_value(const Component& c, double xj);

  std::vector<Component> components_;
  AdditiveConfig cfg_;
  double m0_ = 0.0;
  long t_ = 0;
  long nonconverged_ = 0;
  bool last_converged_ = true;
};

}  // namespace seqsmooth
