#include "seqsmooth/additive.hpp"

#include <cmath>
#include <stdexcept>

namespace seqsmooth {

AdditiveModel::AdditiveModel(std::vector<Smoother> components,
                             AdditiveConfig cfg)
    : cfg_(cfg) {
  if (components.empty())
    throw std::invalid_argument("AdditiveModel: need at least one component");
  if (!(cfg.tol > 0.0) || cfg.max_iter < 1)
    throw std::invalid_argument("AdditiveModel: bad convergence config");
  components_.reserve(components.size());
  for (auto& c : components) components_.push_back({std::move(c), 0.0});
}

AdditiveModel AdditiveModel::locpoly_components(int dimension,
                                                const EvaluationGrid& grid,
                                                const KernelSpec& kernel,
                                                double c, AdditiveConfig cfg,
                                                int degree) {
  if (dimension < 1)
    throw std::invalid_argument("AdditiveModel: dimension must be >= 1");
  std::vector<Smoother> comps;
  comps.reserve(static_cast<std::size_t>(dimension));
  for (int j = 0; j < dimension; ++j)
    comps.emplace_back(SequentialLocPoly(grid, kernel,
                                         BandwidthSchedule(c, 0.2), degree));
  return AdditiveModel(std::move(comps), cfg);
}

double AdditiveModel::centered_value(const Component& c, double xj) {
  return smoother_try_predict(c.model, xj).value_or(0.0) - c.offset;
}

bool AdditiveModel::observe(std::span<const double> x, double y) {
  const std::size_t p = components_.size();
  if (x.size() != p)
    throw std::invalid_argument("AdditiveModel: coordinate count mismatch");
  if (!std::isfinite(y)) return false;
  for (std::size_t j = 0; j < p; ++j) {
    if (!std::isfinite(x[j])) return false;
    if (!smoother_grid(components_[j].model).contains(x[j])) return false;
  }

  const long t = t_ + 1;
  const double m0 =
      (static_cast<double>(t - 1) / static_cast<double>(t)) * m0_ +
      y / static_cast<double>(t);

  // Inner relaxation: partial residuals against centered scratch
  // updates of the other components, swept until stationary.
  std::vector<double> resid(p, 0.0);
  std::vector<double> prev(p, 0.0);
  bool converged = false;
  for (int iter = 0; iter < cfg_.max_iter; ++iter) {
    prev = resid;
    for (std::size_t j = 0; j < p; ++j) {
      double others = 0.0;
      for (std::size_t k = 0; k < p; ++k) {
        if (k == j) continue;
        Component scratch = components_[k];
        smoother_observe(scratch.model, x[k], resid[k]);
        scratch.offset = smoother_grid_mean(scratch.model);
        others += centered_value(scratch, x[k]);
      }
      resid[j] = y - m0 - others;
    }
    double delta = 0.0;
    for (std::size_t j = 0; j < p; ++j)
      delta = std::max(delta, std::fabs(resid[j] - prev[j]));
    if (delta < cfg_.tol) {
      converged = true;
      break;
    }
  }

  // Commit with the converged residuals and recenter.
  for (std::size_t j = 0; j < p; ++j) {
    auto& comp = components_[j];
    smoother_observe(comp.model, x[j], resid[j]);
    comp.offset = smoother_grid_mean(comp.model);
  }
  m0_ = m0;
  t_ = t;
  last_converged_ = converged;
  if (!converged) ++nonconverged_;
  return true;
}

double AdditiveModel::predict(std::span<const double> x) const {
  if (t_ == 0) throw EmptyEstimatorError("AdditiveModel: no observations");
  const std::size_t p = components_.size();
  if (x.size() != p)
    throw std::invalid_argument("AdditiveModel: coordinate count mismatch");
  for (std::size_t j = 0; j < p; ++j)
    if (!smoother_grid(components_[j].model).contains(x[j]))
      throw std::out_of_range("AdditiveModel: coordinate outside grid");
  double acc = m0_;
  for (std::size_t j = 0; j < p; ++j)
    acc += centered_value(components_[j], x[j]);
  return acc;
}

double AdditiveModel::component_value(int j, double xj) const {
  if (j < 0 || j >= dimension())
    throw std::out_of_range("AdditiveModel: component index");
  const auto& comp = components_[static_cast<std::size_t>(j)];
  if (!smoother_grid(comp.model).contains(xj))
    throw std::out_of_range("AdditiveModel: coordinate outside grid");
  return centered_value(comp, xj);
}

}  // namespace seqsmooth
