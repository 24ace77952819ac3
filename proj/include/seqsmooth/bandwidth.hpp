#pragma once

#include <cmath>
#include <stdexcept>

namespace seqsmooth {

// Power-law bandwidth sequence h_t = c * t^(-k). Observation t is
// smoothed with h_t once and never revisited, which is what makes the
// sequential estimators incremental.
//
// Construction is permissive: schedules with k outside (0, 1) (including
// the constant k = 0 schedule, useful for reducing to fixed-bandwidth
// batch estimators) can be built and evaluated. `valid()` reports whether
// the schedule satisfies the shrinking-bandwidth conditions the risk
// guarantees need: c > 0 and 0 < k < 1.
struct BandwidthSchedule {
  double c = 1.0;        // scale constant
  double exponent = 0.2; // decay exponent k

  BandwidthSchedule() = default;
  BandwidthSchedule(double c_, double exponent_) : c(c_), exponent(exponent_) {}

  // Schedule targeting d continuous derivatives: k = 1/(2d+1).
  static BandwidthSchedule for_smoothness(double c, int d) {
    if (d < 1)
      throw std::invalid_argument("BandwidthSchedule: smoothness d must be >= 1");
    return {c, 1.0 / (2.0 * d + 1.0)};
  }

  // Schedule matched to a degree-p local polynomial fit, which targets
  // d = p + 1 derivatives: k = 1/(2p+3).
  static BandwidthSchedule for_degree(double c, int degree) {
    if (degree < 0)
      throw std::invalid_argument("BandwidthSchedule: degree must be >= 0");
    return for_smoothness(c, degree + 1);
  }

  double at(long t) const {
    if (t < 1)
      throw std::invalid_argument("BandwidthSchedule: t must be >= 1");
    return c * std::pow(static_cast<double>(t), -exponent);
  }

  bool valid() const {
    return std::isfinite(c) && c > 0.0 && exponent > 0.0 && exponent < 1.0;
  }
};

}  // namespace seqsmooth
