#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace seqsmooth {

// Uniform evaluation grid, endpoints included. Estimator state lives on
// these points; queries between points interpolate linearly.
class EvaluationGrid {
 public:
  EvaluationGrid(double lo, double hi, int count)
      : lo_(lo), hi_(hi), count_(count) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
      throw std::invalid_argument("EvaluationGrid: need finite lo < hi");
    if (count < 2)
      throw std::invalid_argument("EvaluationGrid: need at least 2 points");
    step_ = (hi - lo) / static_cast<double>(count - 1);
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int count() const { return count_; }
  double step() const { return step_; }

  double point(int i) const {
    return i == count_ - 1 ? hi_ : lo_ + step_ * static_cast<double>(i);
  }

  std::vector<double> points() const {
    std::vector<double> out(static_cast<std::size_t>(count_));
    for (int i = 0; i < count_; ++i) out[static_cast<std::size_t>(i)] = point(i);
    return out;
  }

  bool contains(double x) const { return x >= lo_ && x <= hi_; }

  // Index range [first, last) of points within `radius` of `center`,
  // widened by one point per side; callers decide per point whether the
  // weight is actually nonzero, so over-covering is harmless.
  std::pair<int, int> index_range(double center, double radius) const {
    if (!std::isfinite(radius)) return {0, count_};
    const double a = (center - radius - lo_) / step_;
    const double b = (center + radius - lo_) / step_;
    int first = static_cast<int>(std::floor(a)) - 1;
    int last = static_cast<int>(std::ceil(b)) + 2;
    first = std::max(first, 0);
    last = std::min(last, count_);
    if (first >= last) return {0, 0};
    return {first, last};
  }

  struct Location {
    int left;      // index of the left bracketing point
    double frac;   // 0 at left point, 1 at the next
    bool on_point; // x coincides with a grid point exactly
  };

  Location locate(double x) const {
    if (!(x >= lo_ && x <= hi_))
      throw std::out_of_range("EvaluationGrid: query outside [lo, hi]");
    int i = static_cast<int>(std::floor((x - lo_) / step_));
    i = std::clamp(i, 0, count_ - 2);
    if (x == point(i)) return {i, 0.0, true};
    if (x == point(i + 1)) return {i, 1.0, true};
    const double frac = (x - point(i)) / (point(i + 1) - point(i));
    return {i, frac, false};
  }

  // Linear interpolation of per-point values; exact on grid points.
  double interpolate(std::span<const double> values, double x) const {
    const Location loc = locate(x);
    if (loc.on_point)
      return values[static_cast<std::size_t>(
          loc.frac == 0.0 ? loc.left : loc.left + 1)];
    const double a = values[static_cast<std::size_t>(loc.left)];
    const double b = values[static_cast<std::size_t>(loc.left + 1)];
    return a + (b - a) * loc.frac;
  }

 private:
  double lo_;
  double hi_;
  double step_;
  int count_;
};

// The default grid used across experiments: 201 points on [0, 1].
inline EvaluationGrid default_unit_grid() { return {0.0, 1.0, 201}; }

}  // namespace seqsmooth
