#pragma once

#include <span>
#include <string>
#include <vector>

#include "seqsmooth/smoother.hpp"

namespace seqsmooth {

// Softmax of -eta * losses with max-subtraction, so weights stay finite
// as cumulative losses grow linearly in t. Sums to 1.
std::vector<double> weights_from_losses(std::span<const double> losses,
                                        double eta);

struct MixerConfig {
  // Range bound the experts are clipped to before losses and mixing.
  double clip_bound = 4.0;
  // Learning rate; <= 0 selects the squared-loss-safe default 1/(8 A^2).
  double eta = 0.0;

  double effective_eta() const {
    return eta > 0.0 ? eta : 1.0 / (8.0 * clip_bound * clip_bound);
  }
};

// Exponential-weight aggregation over sequential estimators. Each step
// is predict-then-learn: every expert predicts the incoming response
// from its pre-update state, pays squared loss, weights update
// multiplicatively, and only then do the experts absorb the point.
class ExpertPool {
 public:
  explicit ExpertPool(MixerConfig cfg = {});

  // Experts join before the first observation.
  void add_expert(std::string label, Smoother model);

  // Convenience constructor over a constants-by-degrees grid of local
  // polynomial experts, one per (c, degree) pair.
  static ExpertPool locpoly_grid(const EvaluationGrid& grid,
                                 const KernelSpec& kernel,
                                 std::span<const double> constants,
                                 std::span<const int> degrees,
                                 MixerConfig cfg = {});

  std::size_t size() const { return experts_.size(); }
  long step() const { return t_; }
  double eta() const { return eta_; }
  double clip_bound() const { return clip_; }

  const std::vector<double>& losses() const { return losses_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::string& label(std::size_t k) const { return labels_[k]; }
  const Smoother& expert(std::size_t k) const { return experts_[k]; }

  // Count of predictions that fell back to the running response mean
  // because an expert had no usable answer.
  long fallback_count() const { return fallbacks_; }

  // Feeds one observation through the predict-then-learn cycle.
  // Non-finite input is rejected with the pool untouched.
  bool observe(double x, double y);

  // Expert k's clipped prediction at x from its current state.
  double expert_prediction(std::size_t k, double x) const;

  // Convex combination sum_k w_k * (clipped expert prediction at x).
  // Requires at least one observation.
  double predict(double x) const;

 private:
  double clipped_or_fallback(std::size_t k, double x) const;

  std::vector<Smoother> experts_;
  std::vector<std::string> labels_;
  std::vector<double> losses_;
  std::vector<double> weights_;
  double eta_;
  double clip_;
  long t_ = 0;
  double y_sum_ = 0.0;
  mutable long fallbacks_ = 0;
};

}  // namespace seqsmooth
