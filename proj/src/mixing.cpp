#include "seqsmooth/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqsmooth {

std::vector<double> weights_from_losses(std::span<const double> losses,
                                        double eta) {
  if (losses.empty())
    throw std::invalid_argument("weights_from_losses: empty losses");
  if (!(eta > 0.0))
    throw std::invalid_argument("weights_from_losses: eta must be > 0");
  double lo = losses[0];
  for (const double l : losses) {
    if (!std::isfinite(l))
      throw std::invalid_argument("weights_from_losses: non-finite loss");
    lo = std::min(lo, l);
  }
  std::vector<double> w(losses.size());
  double total = 0.0;
  for (std::size_t k = 0; k < losses.size(); ++k) {
    w[k] = std::exp(-eta * (losses[k] - lo));
    total += w[k];
  }
  for (double& v : w) v /= total;
  return w;
}

ExpertPool::ExpertPool(MixerConfig cfg)
    : eta_(cfg.effective_eta()), clip_(cfg.clip_bound) {
  if (!(clip_ > 0.0))
    throw std::invalid_argument("ExpertPool: clip bound must be > 0");
}

void ExpertPool::add_expert(std::string label, Smoother model) {
  if (t_ != 0)
    throw std::logic_error("ExpertPool: experts must join before data");
  experts_.push_back(std::move(model));
  labels_.push_back(std::move(label));
  losses_.push_back(0.0);
  const std::size_t m = experts_.size();
  weights_.assign(m, 1.0 / static_cast<double>(m));
}

ExpertPool ExpertPool::locpoly_grid(const EvaluationGrid& grid,
                                    const KernelSpec& kernel,
                                    std::span<const double> constants,
                                    std::span<const int> degrees,
                                    MixerConfig cfg) {
  ExpertPool pool(cfg);
  for (const double c : constants)
    for (const int p : degrees)
      pool.add_expert(
          "c=" + std::to_string(c) + ",p=" + std::to_string(p),
          SequentialLocPoly::with_auto_schedule(grid, kernel, c, p));
  return pool;
}

double ExpertPool::clipped_or_fallback(std::size_t k, double x) const {
  const auto pred = smoother_try_predict(experts_[k], x);
  double value;
  if (pred) {
    value = *pred;
  } else {
    ++fallbacks_;
    value = t_ > 0 ? y_sum_ / static_cast<double>(t_) : 0.0;
  }
  return std::clamp(value, -clip_, clip_);
}

bool ExpertPool::observe(double x, double y) {
  if (experts_.empty()) throw std::logic_error("ExpertPool: no experts");
  if (!std::isfinite(x) || !std::isfinite(y)) return false;

  const std::size_t m = experts_.size();

  // 1) Pre-update predictions, clipped to the expert range.
  std::vector<double> pred(m);
  for (std::size_t k = 0; k < m; ++k) pred[k] = clipped_or_fallback(k, x);

  // 2) Cumulative squared losses.
  std::vector<double> step_loss(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double e = y - pred[k];
    step_loss[k] = e * e;
    losses_[k] += step_loss[k];
  }

  // 3) Multiplicative weight update, renormalized. Shifting by the
  // smallest step loss keeps the exponentials bounded.
  double lo = step_loss[0];
  for (const double l : step_loss) lo = std::min(lo, l);
  double total = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    weights_[k] *= std::exp(-eta_ * (step_loss[k] - lo));
    total += weights_[k];
  }
  for (double& w : weights_) w /= total;

  // 4) Only now do the experts see the point.
  for (std::size_t k = 0; k < m; ++k) smoother_observe(experts_[k], x, y);

  y_sum_ += y;
  ++t_;
  return true;
}

double ExpertPool::expert_prediction(std::size_t k, double x) const {
  if (k >= experts_.size())
    throw std::out_of_range("ExpertPool: expert index");
  return clipped_or_fallback(k, x);
}

double ExpertPool::predict(double x) const {
  if (experts_.empty()) throw std::logic_error("ExpertPool: no experts");
  if (t_ == 0) throw EmptyEstimatorError("ExpertPool: no observations");
  double acc = 0.0;
  for (std::size_t k = 0; k < experts_.size(); ++k)
    acc += weights_[k] * clipped_or_fallback(k, x);
  return acc;
}

}  // namespace seqsmooth
