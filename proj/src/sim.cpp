#include "seqsmooth/sim.hpp"

#include <cmath>
#include <stdexcept>

#include "seqsmooth/kernels.hpp"

namespace seqsmooth {

double TrueFunction::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::out_of_range("TrueFunction: x outside [0, 1]");
  return f(x);
}

TrueFunction true_f1() {
  return {"f1", [](double x) { return std::exp(-x); }};
}

TrueFunction true_f2() {
  return {"f2", [](double x) {
            const double u = x - 0.5;
            return 1.0 + 2.0 * x * x + std::exp(-5.0 * u * u);
          }};
}

TrueFunction true_f3() {
  return {"f3", [](double x) {
            const double u = x - 0.5;
            return 1.0 + 2.0 * x * x + std::exp(-200.0 * u * u);
          }};
}

TrueFunction true_f4() {
  return {"f4", [](double x) {
            const double s = 1.0 / std::sqrt(0.005 * M_PI);
            const double a = x - 0.2;
            const double b = x - 0.8;
            return s * (std::exp(-200.0 * a * a) + std::exp(-200.0 * b * b));
          }};
}

TrueFunction holder_function(double alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("holder_function: alpha must be > 0");
  return {"holder:" + std::to_string(alpha), [alpha](double x) {
            return 2.0 * std::pow(std::fabs(0.5 * (x - 0.5)), alpha);
          }};
}

TrueFunction true_function_by_name(const std::string& name) {
  if (name == "f1") return true_f1();
  if (name == "f2") return true_f2();
  if (name == "f3") return true_f3();
  if (name == "f4") return true_f4();
  if (name.rfind("holder:", 0) == 0)
    return holder_function(std::stod(name.substr(7)));
  throw std::invalid_argument("unknown function: " + name);
}

std::vector<Observation> generate_stream(const SimConfig& cfg,
                                         const TrueFunction& f) {
  Rng rng(cfg.seed);
  return generate_stream(cfg, f, rng);
}

std::vector<Observation> generate_stream(const SimConfig& cfg,
                                         const TrueFunction& f, Rng& rng) {
  if (cfg.n < 0) throw std::invalid_argument("generate_stream: n must be >= 0");
  if (!(cfg.sigma2 >= 0.0))
    throw std::invalid_argument("generate_stream: sigma2 must be >= 0");
  const double sd = std::sqrt(cfg.sigma2);
  std::vector<Observation> out;
  out.reserve(static_cast<std::size_t>(cfg.n));
  for (long i = 0; i < cfg.n; ++i) {
    const double x = rng.uniform01();
    const double y = f(x) + sd * rng.normal();
    out.push_back({x, y});
  }
  return out;
}

TruncatedGaussianDensity::TruncatedGaussianDensity(double mean, double sd,
                                                   double lo, double hi)
    : mean_(mean), sd_(sd), lo_(lo), hi_(hi) {
  if (!(sd > 0.0) || !(lo < hi))
    throw std::invalid_argument("TruncatedGaussianDensity: bad parameters");
  const auto cdf = [&](double x) {
    return 0.5 * std::erfc(-(x - mean_) / (sd_ * std::sqrt(2.0)));
  };
  norm_ = cdf(hi) - cdf(lo);
  if (!(norm_ > 0.0))
    throw std::invalid_argument(
        "TruncatedGaussianDensity: no mass inside [lo, hi]");
}

double TruncatedGaussianDensity::pdf(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  const double z = (x - mean_) / sd_;
  const double phi = std::exp(-0.5 * z * z) / (sd_ * std::sqrt(2.0 * M_PI));
  return phi / norm_;
}

double TruncatedGaussianDensity::second_derivative(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  const double z = (x - mean_) / sd_;
  return pdf(x) * (z * z - 1.0) / (sd_ * sd_);
}

double TruncatedGaussianDensity::curvature_integral(double a, double b) const {
  return integrate(
      [&](double x) {
        const double d2 = second_derivative(x);
        return d2 * d2;
      },
      a, b, 1e-10);
}

double TruncatedGaussianDensity::sample(Rng& rng) const {
  // Rejection against the untruncated Gaussian; acceptance is the
  // truncation mass, near 1 for the densities used here.
  for (;;) {
    const double x = mean_ + sd_ * rng.normal();
    if (x >= lo_ && x <= hi_) return x;
  }
}

IseResult integrated_squared_error(
    const std::function<double(double)>& predict,
    const std::function<double(double)>& truth, const EvaluationGrid& grid) {
  IseResult result;
  std::vector<double> sq(static_cast<std::size_t>(grid.count()));
  for (int i = 0; i < grid.count(); ++i) {
    const double x = grid.point(i);
    double pred;
    try {
      pred = predict(x);
    } catch (const LowMassError&) {
      pred = 0.0;
      ++result.fallback_points;
    } catch (const EmptyEstimatorError&) {
      pred = 0.0;
      ++result.fallback_points;
    }
    const double e = pred - truth(x);
    sq[static_cast<std::size_t>(i)] = e * e;
  }
  double acc = 0.0;
  for (int i = 0; i + 1 < grid.count(); ++i)
    acc += 0.5 * (sq[static_cast<std::size_t>(i)] +
                  sq[static_cast<std::size_t>(i + 1)]);
  result.value = acc * grid.step();
  return result;
}

std::vector<AvgLossPoint> sequential_avg_loss(
    std::span<const Observation> stream,
    const std::function<std::optional<double>(double)>& predict,
    const std::function<void(double, double)>& update, long warmup,
    long* fallbacks) {
  if (warmup < 0)
    throw std::invalid_argument("sequential_avg_loss: warmup must be >= 0");
  std::vector<AvgLossPoint> out;
  double loss_sum = 0.0;
  long counted = 0;
  long fb = 0;
  double y_sum = 0.0;
  long t = 0;
  for (const auto& obs : stream) {
    if (t >= warmup) {
      double pred;
      const auto maybe = predict(obs.x);
      if (maybe) {
        pred = *maybe;
      } else {
        pred = t > 0 ? y_sum / static_cast<double>(t) : 0.0;
        ++fb;
      }
      const double e = obs.y - pred;
      loss_sum += e * e;
      ++counted;
      out.push_back({t + 1, loss_sum / static_cast<double>(counted)});
    }
    update(obs.x, obs.y);
    y_sum += obs.y;
    ++t;
  }
  if (fallbacks) *fallbacks = fb;
  return out;
}

std::vector<AvgLossPoint> sequential_avg_loss(
    std::span<const Observation> stream, Smoother& estimator, long warmup,
    long* fallbacks) {
  return sequential_avg_loss(
      stream,
      [&](double x) { return smoother_try_predict(estimator, x); },
      [&](double x, double y) { smoother_observe(estimator, x, y); }, warmup,
      fallbacks);
}

double rate_slope(const RiskReport& report, int* excluded) {
  std::vector<double> lx;
  std::vector<double> ly;
  int skipped = 0;
  for (const auto& row : report.rows) {
    if (!(row.mean_risk > 0.0)) {
      ++skipped;
      continue;
    }
    lx.push_back(std::log(static_cast<double>(row.n)));
    ly.push_back(std::log(row.mean_risk));
  }
  if (excluded) *excluded = skipped;
  if (lx.size() < 3)
    throw std::invalid_argument("rate_slope: need >= 3 usable risk points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(lx.size());
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  return sxy / sxx;
}

MeanStderr mean_stderr(std::span<const double> values) {
  MeanStderr out;
  const std::size_t n = values.size();
  if (n == 0) return out;
  double sum = 0.0;
  for (const double v : values) sum += v;
  out.mean = sum / static_cast<double>(n);
  if (n >= 2) {
    double ss = 0.0;
    for (const double v : values) {
      const double d = v - out.mean;
      ss += d * d;
    }
    out.std_error =
        std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
  }
  return out;
}

}  // namespace seqsmooth
