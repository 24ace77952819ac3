#pragma once

namespace seqsmooth {

struct Observation {
  double x = 0.0;
  double y = 0.0;
};

}  // namespace seqsmooth
