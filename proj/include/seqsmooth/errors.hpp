#pragma once

#include <stdexcept>

namespace seqsmooth {

// A kernel-weighted denominator carries no usable mass at the queried point.
// Callers may recover by substituting a running mean of the responses.
struct LowMassError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An estimator was queried before it accepted any observation.
struct EmptyEstimatorError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace seqsmooth
