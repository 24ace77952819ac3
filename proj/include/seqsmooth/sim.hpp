#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "seqsmooth/grid.hpp"
#include "seqsmooth/observation.hpp"
#include "seqsmooth/rng.hpp"
#include "seqsmooth/smoother.hpp"

namespace seqsmooth {

// A known regression function on [0, 1], used to generate streams and
// score estimates against the truth.
struct TrueFunction {
  std::string label;
  std::function<double(double)> f;

  double operator()(double x) const;
};

// The four benchmark regression functions of increasing spatial
// inhomogeneity, plus the Holder-smoothness family with exponent alpha
// at its critical point 0.5.
TrueFunction true_f1();
TrueFunction true_f2();
TrueFunction true_f3();
TrueFunction true_f4();
TrueFunction holder_function(double alpha);

// Lookup by "f1".."f4" or "holder:<alpha>".
TrueFunction true_function_by_name(const std::string& name);

struct SimConfig {
  long n = 150;
  double sigma2 = 0.5;
  std::uint64_t seed = 1;
};

// n iid pairs with X uniform on [0, 1] and Y = f(X) + N(0, sigma2).
// Fully determined by the seed.
std::vector<Observation> generate_stream(const SimConfig& cfg,
                                         const TrueFunction& f);
std::vector<Observation> generate_stream(const SimConfig& cfg,
                                         const TrueFunction& f, Rng& rng);

// Smooth test density for density-estimation experiments: a Gaussian
// restricted and renormalized to [lo, hi]. Sampling is by rejection.
class TruncatedGaussianDensity {
 public:
  TruncatedGaussianDensity(double mean, double sd, double lo = 0.0,
                           double hi = 1.0);

  double pdf(double x) const;
  double second_derivative(double x) const;
  // int f''(x)^2 dx over [a, b], by quadrature of the analytic f''.
  double curvature_integral(double a, double b) const;
  double sample(Rng& rng) const;

  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double mean_;
  double sd_;
  double lo_;
  double hi_;
  double norm_; // mass of the untruncated Gaussian inside [lo, hi]
};

struct IseResult {
  double value = 0.0;
  int fallback_points = 0; // grid points where the predictor had no answer
};

// Trapezoid-rule integral of (predict - truth)^2 over the grid span.
// A predictor failure at a grid point contributes a zero prediction and
// bumps the fallback counter instead of aborting the integral.
IseResult integrated_squared_error(const std::function<double(double)>& predict,
                                   const std::function<double(double)>& truth,
                                   const EvaluationGrid& grid);

// The interior window risks are evaluated on, away from boundary bias.
inline EvaluationGrid interior_grid(int count = 161) {
  return {0.1, 0.9, count};
}

struct AvgLossPoint {
  long t = 0;
  double avg_loss = 0.0;
};

// Prequential evaluation: for each t past the warmup, predict y_t from
// the state fitted to the first t-1 points, record the squared error,
// then update. Prediction failures fall back to the running response
// mean (counted, not fatal). Returns the running averages.
std::vector<AvgLossPoint> sequential_avg_loss(std::span<const Observation> stream,
                                              Smoother& estimator, long warmup,
                                              long* fallbacks = nullptr);

// Same cycle for an arbitrary predict/update pair; predict returns
// nullopt when it has no answer.
std::vector<AvgLossPoint> sequential_avg_loss(
    std::span<const Observation> stream,
    const std::function<std::optional<double>(double)>& predict,
    const std::function<void(double, double)>& update, long warmup,
    long* fallbacks = nullptr);

struct RiskRow {
  long n = 0;
  double mean_risk = 0.0;
  double std_error = 0.0;
  long reps = 0;
};

struct RiskReport {
  std::string metric;    // "ise-interior", "avg-pred-loss", "pointwise@x0"
  std::string estimator; // label of the estimator configuration
  std::vector<RiskRow> rows;
};

// Least-squares slope of log(risk) against log(n). Rows with
// non-positive risk are excluded (counted via *excluded); fewer than 3
// usable rows is an error.
double rate_slope(const RiskReport& report, int* excluded = nullptr);

// Mean and standard error of a sample.
struct MeanStderr {
  double mean = 0.0;
  double std_error = 0.0;
};
MeanStderr mean_stderr(std::span<const double> values);

}  // namespace seqsmooth
