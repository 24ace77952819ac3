#pragma once

#include <optional>
#include <variant>

#include "seqsmooth/errors.hpp"
#include "seqsmooth/locpoly.hpp"

namespace seqsmooth {

// A sequential one-dimensional smoother: either the Nadaraya-Watson
// estimator or a local polynomial fit. Value semantics; copies are
// independent streams, which the backfitting inner loop relies on.
using Smoother = std::variant<SequentialNw, SequentialLocPoly>;

inline bool smoother_observe(Smoother& s, double x, double y) {
  return std::visit([&](auto& m) { return m.observe(x, y); }, s);
}

inline double smoother_predict(const Smoother& s, double x) {
  return std::visit([&](const auto& m) { return m.predict(x); }, s);
}

// nullopt when the smoother has no usable answer (empty, or no local
// mass); out-of-range queries still throw.
inline std::optional<double> smoother_try_predict(const Smoother& s,
                                                  double x) {
  try {
    return smoother_predict(s, x);
  } catch (const LowMassError&) {
    return std::nullopt;
  } catch (const EmptyEstimatorError&) {
    return std::nullopt;
  }
}

inline long smoother_n(const Smoother& s) {
  return std::visit([](const auto& m) { return m.n(); }, s);
}

inline const EvaluationGrid& smoother_grid(const Smoother& s) {
  return std::visit(
      [](const auto& m) -> const EvaluationGrid& { return m.grid(); }, s);
}

inline void smoother_set_exec_policy(Smoother& s, ExecPolicy exec) {
  std::visit([&](auto& m) { m.set_exec_policy(exec); }, s);
}

// Grid value with low-mass points contributing 0, used where a whole
// grid must be scanned regardless of coverage (centering, snapshots).
inline double smoother_grid_value_or_zero(const Smoother& s, int i) {
  return std::visit(
      [&](const auto& m) {
        try {
          return m.predict_at(i);
        } catch (const LowMassError&) {
          return 0.0;
        }
      },
      s);
}

inline double smoother_grid_mean(const Smoother& s) {
  const auto& grid = smoother_grid(s);
  double acc = 0.0;
  for (int i = 0; i < grid.count(); ++i)
    acc += smoother_grid_value_or_zero(s, i);
  return acc / static_cast<double>(grid.count());
}

}  // namespace seqsmooth
