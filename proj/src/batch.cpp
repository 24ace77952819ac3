#include "seqsmooth/batch.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "seqsmooth/locpoly.hpp"
#include "seqsmooth/smallmat.hpp"

namespace seqsmooth {

namespace {

// Accumulates S = ridge*I + sum w x x^T and b = sum w y x at x0,
// skipping index `skip` (pass -1 to keep everything).
void accumulate_normal_equations(std::span<const Observation> data,
                                 const BatchFitConfig& cfg, double x0,
                                 std::ptrdiff_t skip, SmallMat& s, SmallVec& b,
                                 double& mass) {
  const int dim = cfg.degree + 1;
  s = SmallMat::identity_scaled(dim, cfg.ridge);
  b = SmallVec::zero(dim);
  mass = 0.0;
  double feat[kMaxBasis];
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(data.size());
       ++i) {
    if (i == skip) continue;
    const auto& obs = data[static_cast<std::size_t>(i)];
    const double w = unscaled_weight_unchecked(cfg.kernel, cfg.h, obs.x, x0);
    if (w == 0.0) continue;
    mass += w;
    const double dx = obs.x - x0;
    feat[0] = 1.0;
    for (int j = 1; j < dim; ++j) feat[j] = feat[j - 1] * dx;
    for (int r = 0; r < dim; ++r) {
      const double wf = w * feat[r];
      for (int c = 0; c <= r; ++c) s.at(r, c) += wf * feat[c];
      b[r] += wf * obs.y;
    }
  }
  for (int r = 0; r < dim; ++r)
    for (int c = r + 1; c < dim; ++c) s.at(r, c) = s.at(c, r);
}

double fit_at(std::span<const Observation> data, const BatchFitConfig& cfg,
              double x0, std::ptrdiff_t skip, bool* low_mass) {
  if (cfg.degree < 0 || cfg.degree + 1 > kMaxBasis)
    throw std::invalid_argument("batch_locpoly_fit: unsupported degree");
  if (!(cfg.h > 0.0))
    throw std::invalid_argument("batch_locpoly_fit: bandwidth must be > 0");
  if (!(cfg.ridge > 0.0))
    throw std::invalid_argument("batch_locpoly_fit: ridge must be > 0");
  SmallMat s;
  SmallVec b;
  double mass = 0.0;
  accumulate_normal_equations(data, cfg, x0, skip, s, b, mass);
  if (low_mass) *low_mass = mass < kDenFloor;
  SmallVec beta;
  if (!solve_linear(s, b, beta, 0.0))
    throw std::runtime_error("batch_locpoly_fit: solve failed");
  return beta[0];
}

}  // namespace

double batch_locpoly_fit(std::span<const Observation> data,
                         const BatchFitConfig& cfg, double x0,
                         bool* low_mass) {
  if (data.empty())
    throw std::invalid_argument("batch_locpoly_fit: empty data");
  return fit_at(data, cfg, x0, -1, low_mass);
}

double loo_cv_constant(std::span<const Observation> data,
                       std::span<const double> candidates, int degree,
                       const KernelSpec& kernel, double n_exponent,
                       double ridge) {
  if (data.size() < 2)
    throw std::invalid_argument("loo_cv_constant: need at least 2 points");
  if (candidates.empty())
    throw std::invalid_argument("loo_cv_constant: no candidates");

  const double n = static_cast<double>(data.size());
  double best_c = 0.0;
  double best_score = std::numeric_limits<double>::infinity();
  bool any = false;

  for (const double c : candidates) {
    BatchFitConfig cfg;
    cfg.degree = degree;
    cfg.h = c * std::pow(n, -n_exponent);
    cfg.kernel = kernel;
    cfg.ridge = ridge;
    double score = 0.0;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(data.size());
         ++i) {
      const auto& obs = data[static_cast<std::size_t>(i)];
      const double pred = fit_at(data, cfg, obs.x, i, nullptr);
      const double e = obs.y - pred;
      score += e * e;
    }
    if (!std::isfinite(score)) continue;
    if (score < best_score || (score == best_score && c < best_c)) {
      best_score = score;
      best_c = c;
      any = true;
    }
  }
  if (!any)
    throw std::runtime_error("loo_cv_constant: no candidate produced a fit");
  return best_c;
}

}  // namespace seqsmooth
