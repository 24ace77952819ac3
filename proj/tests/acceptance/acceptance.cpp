// Acceptance suite: one check per numbered criterion, each printing a
// single PASS/FAIL line. Run with no arguments for all criteria or with
// a list of criterion numbers. Exit code is the number of failures.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "seqsmooth/batch.hpp"
#include "seqsmooth/density.hpp"
#include "seqsmooth/experiments.hpp"
#include "seqsmooth/mixing.hpp"
#include "seqsmooth/additive.hpp"

using namespace seqsmooth;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double rel_gap(double a, double b) {
  return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1.0});
}

// --------------------------------------------------------------------
// 1. Sequential locpoly equals the dense variable-weight solve.
// --------------------------------------------------------------------

double dense_varweight_intercept(const std::vector<Observation>& data,
                                 const KernelSpec& kernel,
                                 const BandwidthSchedule& schedule, int degree,
                                 double ridge, double x0) {
  const int dim = degree + 1;
  Eigen::MatrixXd s = ridge * Eigen::MatrixXd::Identity(dim, dim);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(dim);
  for (std::size_t t = 0; t < data.size(); ++t) {
    const double w = scaled_kernel_weight(
        kernel, schedule.at(static_cast<long>(t + 1)), data[t].x, x0);
    if (w == 0.0) continue;
    Eigen::VectorXd feat(dim);
    feat(0) = 1.0;
    for (int j = 1; j < dim; ++j) feat(j) = feat(j - 1) * (data[t].x - x0);
    s += w * feat * feat.transpose();
    b += w * data[t].y * feat;
  }
  return s.fullPivLu().solve(b)(0);
}

Outcome criterion1() {
  const EvaluationGrid grid = default_unit_grid();
  Rng rng(1001);
  double worst = 0.0;
  for (int stream_i = 0; stream_i < 100; ++stream_i) {
    const int degree = stream_i % 4;
    const auto kernel = (stream_i % 2) ? kernel_by_name("epanechnikov")
                                       : kernel_by_name("gaussian");
    const double c = 0.15 + rng.uniform01();
    const auto schedule = BandwidthSchedule::for_degree(c, degree);
    const int n = 50 + static_cast<int>(rng.uniform01() * 450);

    SequentialLocPoly est(grid, kernel, schedule, degree);
    std::vector<Observation> data;
    for (int t = 0; t < n; ++t) {
      const double x = rng.uniform01();
      const double y = std::sin(6.0 * x) + 0.7 * rng.normal();
      data.push_back({x, y});
      est.observe(x, y);
    }
    for (int i = 0; i < grid.count(); ++i) {
      const double dense = dense_varweight_intercept(
          data, kernel, schedule, degree, est.ridge(), grid.point(i));
      worst = std::max(worst, rel_gap(est.predict_at(i), dense));
    }
  }
  std::ostringstream ss;
  ss << "max relative gap " << worst << " over 100 streams (tolerance 1e-7)";
  return {worst < 1e-7, ss.str()};
}

// --------------------------------------------------------------------
// 2. Rank-one inverse updates match dense inversion.
// --------------------------------------------------------------------

Outcome criterion2() {
  Rng rng(2002);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int dim = 1 + static_cast<int>(rng.uniform01() * 6.0) % 6;
    Eigen::MatrixXd b(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) b(i, j) = 2.0 * rng.uniform01() - 1.0;
    const Eigen::MatrixXd a = b * b.transpose() +
                              (0.05 + rng.uniform01()) *
                                  Eigen::MatrixXd::Identity(dim, dim);
    const Eigen::MatrixXd a_inv = a.inverse();

    SmallMat mi;
    mi.n = dim;
    SmallVec v = SmallVec::zero(dim);
    Eigen::VectorXd ve(dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) mi.at(i, j) = a_inv(i, j);
      v[i] = 2.0 * rng.uniform01() - 1.0;
      ve(i) = v[i];
    }
    const double w = rng.uniform01() * 4.0;
    const SmallMat mine = rank_one_inverse_update(mi, v, w);
    const Eigen::MatrixXd dense = (a + w * ve * ve.transpose()).inverse();
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        worst = std::max(worst, rel_gap(mine.at(i, j), dense(i, j)));
  }
  std::ostringstream ss;
  ss << "max relative gap " << worst
     << " over 10000 updates, dims 1-6 (tolerance 1e-9)";
  return {worst < 1e-9, ss.str()};
}

// --------------------------------------------------------------------
// 3. Density estimation rate.
// --------------------------------------------------------------------

Outcome criterion3() {
  KdeRateConfig cfg;
  cfg.seed = 3003;
  const auto res = run_kde_rate(cfg);
  std::ostringstream ss;
  ss << "log-log slope " << res.slope << " over n in {200..5000}, 50 reps "
     << "(required [-1.0, -0.6])";
  return {res.slope >= -1.0 && res.slope <= -0.6, ss.str()};
}

// --------------------------------------------------------------------
// 4. Regression rate.
// --------------------------------------------------------------------

Outcome criterion4() {
  LocPolyRateConfig cfg;
  cfg.seed = 4004;
  const auto res = run_locpoly_rate(cfg);
  std::ostringstream ss;
  ss << "log-log slope " << res.slope
     << " for degree-1 locpoly on f2 (required [-1.0, -0.55])";
  return {res.slope >= -1.0 && res.slope <= -0.55, ss.str()};
}

// --------------------------------------------------------------------
// 5. Loss-curve reproduction.
// --------------------------------------------------------------------

Outcome criterion5() {
  LossCurvesConfig cfg;
  // f4's mean sits at 0.739 with a per-replication spread that makes a
  // 100-replication batch an even-odds draw against the 0.75 band edge
  // (heavy-tailed early losses). 2000 replications bring the Monte-
  // Carlo error to ~0.004 so the stated band is checked decisively;
  // the band and gap thresholds themselves are unchanged.
  cfg.reps = 2000;
  cfg.run_cv = false; // criterion compares best-sequential vs best-batch
  cfg.seed = 5005;
  const auto results = run_loss_curves(cfg);
  bool pass = true;
  std::ostringstream ss;
  for (const auto& r : results) {
    const double gap = std::fabs(r.final_seq_loss - r.final_batch_loss);
    const bool in_band = r.final_seq_loss >= 0.4 && r.final_seq_loss <= 0.75;
    const bool close = gap < 0.1;
    pass = pass && in_band && close;
    ss << r.function << ": seq " << r.final_seq_loss << " batch "
       << r.final_batch_loss << " gap " << gap << "; ";
  }
  ss << "(band [0.4, 0.75], gap < 0.1)";
  return {pass, ss.str()};
}

// --------------------------------------------------------------------
// 6. Matching-exponent expert wins.
// --------------------------------------------------------------------

Outcome criterion6() {
  AdaptationConfig cfg;
  cfg.seed = 6006;
  const auto res = run_adaptation(cfg);
  int wins = 0;
  std::ostringstream ss;
  for (std::size_t ai = 0; ai < res.per_alpha.size(); ++ai) {
    const auto& pa = res.per_alpha[ai];
    std::size_t best = 0;
    for (std::size_t k = 1; k < pa.expert_final.size(); ++k)
      if (pa.expert_final[k].mean < pa.expert_final[best].mean) best = k;
    const bool match = cfg.expert_alphas[best] == pa.alpha;
    wins += match ? 1 : 0;
    ss << "alpha=" << pa.alpha << " best expert " << res.expert_labels[best]
       << (match ? " (match); " : " (MISMATCH); ");
  }
  ss << wins << "/4 matches (need >= 3)";
  return {wins >= 3, ss.str()};
}

// --------------------------------------------------------------------
// 7. Mixture oracle inequality, empirical form.
// --------------------------------------------------------------------

Outcome criterion7() {
  AdaptationConfig cfg;
  cfg.seed = 7007;
  const auto res = run_adaptation(cfg);
  const double eta = cfg.mixer.effective_eta();
  const double m = static_cast<double>(cfg.expert_alphas.size());
  bool pass = true;
  std::ostringstream ss;
  for (const auto& pa : res.per_alpha) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pa.expert_final.size(); ++k)
      if (pa.expert_final[k].mean < pa.expert_final[best].mean) best = k;
    const double excess = pa.mixture_final.mean - pa.expert_final[best].mean;
    const double mc = 3.0 * std::sqrt(pa.mixture_final.std_error *
                                          pa.mixture_final.std_error +
                                      pa.expert_final[best].std_error *
                                          pa.expert_final[best].std_error);
    const double budget =
        2.0 * std::log(m) / (static_cast<double>(cfg.n) * eta) + mc;
    pass = pass && excess < budget;
    ss << "alpha=" << pa.alpha << " excess " << excess << " budget " << budget
       << "; ";
  }
  return {pass, ss.str()};
}

// --------------------------------------------------------------------
// 8. Update-cost independence from the stream length.
// --------------------------------------------------------------------

Outcome criterion8() {
  UpdateCostConfig cfg;
  cfg.seed = 8008;
  const auto res = run_update_cost(cfg);
  std::ostringstream ss;
  ss << "sequential " << res.seq_small_us << "us -> " << res.seq_large_us
     << "us (x" << res.seq_ratio() << ", need < 3); batch refit "
     << res.batch_small_us << "us -> " << res.batch_large_us << "us (x"
     << res.batch_ratio() << ", need > 10)";
  return {res.seq_ratio() < 3.0 && res.batch_ratio() > 10.0, ss.str()};
}

// --------------------------------------------------------------------
// 9. Mixing weight algebra.
// --------------------------------------------------------------------

Outcome criterion9() {
  const EvaluationGrid grid = default_unit_grid();
  Rng rng(9009);
  double worst_gap = 0.0;
  double worst_sum = 0.0;
  for (int stream_i = 0; stream_i < 5; ++stream_i) {
    ExpertPool pool;
    pool.add_expert("a", SequentialNw(grid, gaussian_kernel(),
                                      BandwidthSchedule(0.1, 0.2)));
    pool.add_expert("b", SequentialNw(grid, gaussian_kernel(),
                                      BandwidthSchedule(0.4, 0.25)));
    pool.add_expert("c", SequentialLocPoly::with_auto_schedule(
                             grid, gaussian_kernel(), 0.7, 1));
    for (int t = 0; t < 1000; ++t) {
      const double x = rng.uniform01();
      pool.observe(x, std::sin(5.0 * x) + 0.5 * rng.normal());
      const auto batch = weights_from_losses(pool.losses(), pool.eta());
      double total = 0.0;
      for (std::size_t k = 0; k < pool.size(); ++k) {
        worst_gap = std::max(worst_gap,
                             std::fabs(pool.weights()[k] - batch[k]));
        total += pool.weights()[k];
      }
      worst_sum = std::max(worst_sum, std::fabs(total - 1.0));
    }
  }
  std::ostringstream ss;
  ss << "max incremental-vs-batch weight gap " << worst_gap
     << " (tol 1e-10), max |sum-1| " << worst_sum << " (tol 1e-12)";
  return {worst_gap < 1e-10 && worst_sum < 1e-12, ss.str()};
}

// --------------------------------------------------------------------
// 10. Backfitting properties.
// --------------------------------------------------------------------

Outcome criterion10() {
  std::ostringstream ss;
  bool pass = true;

  // Zero-input invariance.
  {
    auto model = AdditiveModel::locpoly_components(
        2, default_unit_grid(), gaussian_kernel(), 0.25);
    Rng rng(10010);
    bool zero_ok = true;
    for (int t = 0; t < 50; ++t) {
      const double xv[2] = {rng.uniform01(), rng.uniform01()};
      model.observe(std::span<const double>(xv, 2), 0.0);
    }
    zero_ok = zero_ok && model.intercept() == 0.0;
    for (double q : {0.1, 0.5, 0.9})
      for (int j = 0; j < 2; ++j)
        zero_ok = zero_ok && std::fabs(model.component_value(j, q)) < 1e-12;
    pass = pass && zero_ok;
    ss << "zero-input " << (zero_ok ? "ok" : "FAILED") << "; ";
  }

  // p = 1 single-smoother equivalence plus running-mean and centering
  // invariants along the way.
  {
    auto model = AdditiveModel::locpoly_components(
        1, default_unit_grid(), gaussian_kernel(), 0.25);
    Smoother oracle = SequentialLocPoly(default_unit_grid(), gaussian_kernel(),
                                        BandwidthSchedule(0.25, 0.2), 0);
    Rng rng(10011);
    double m0 = 0.0;
    double worst = 0.0;
    double worst_m0 = 0.0;
    double worst_center = 0.0;
    const auto grid = default_unit_grid();
    for (int t = 1; t <= 300; ++t) {
      const double x = rng.uniform01();
      const double y = std::sin(6.0 * x) + 0.3 * rng.normal();
      const double xv[1] = {x};
      model.observe(std::span<const double>(xv, 1), y);
      m0 = ((t - 1.0) / t) * m0 + y / t;
      smoother_observe(oracle, x, y - m0);
      const double offset = smoother_grid_mean(oracle);
      worst_m0 = std::max(worst_m0, std::fabs(model.intercept() - m0));
      for (double q : {0.25, 0.5, 0.75}) {
        const double mine = model.predict(std::span<const double>(&q, 1));
        const double ref = m0 + smoother_predict(oracle, q) - offset;
        worst = std::max(worst, std::fabs(mine - ref));
      }
      double center = 0.0;
      for (int i = 0; i < grid.count(); ++i)
        center += model.component_value(0, grid.point(i));
      worst_center =
          std::max(worst_center, std::fabs(center / grid.count()));
    }
    const bool ok = worst < 1e-10 && worst_m0 < 1e-12 && worst_center < 1e-9;
    pass = pass && ok;
    ss << "p=1 equivalence gap " << worst << ", m0 gap " << worst_m0
       << ", centering " << worst_center << (ok ? " ok; " : " FAILED; ");
  }

  // Additive-truth recovery at n = 2000 with zero noise.
  {
    BackfitDemoConfig cfg;
    cfg.seed = 10012;
    const auto res = run_backfit_demo(cfg);
    const bool ok = res.ise_interior < 0.02;
    pass = pass && ok;
    ss << "recovery interior ISE " << res.ise_interior
       << (ok ? " ok (< 0.02)" : " FAILED (need < 0.02)");
  }

  return {pass, ss.str()};
}

// --------------------------------------------------------------------
// 11. Leading-order risk oracle sanity.
// --------------------------------------------------------------------

Outcome criterion11() {
  const TruncatedGaussianDensity density(0.5, 0.15);
  const EvaluationGrid interior = interior_grid();
  const auto kernel = gaussian_kernel();
  const BandwidthSchedule schedule(0.125, 0.2);
  const long n = 2000;
  const int reps = 200;

  std::vector<double> ise(reps);
  for (int r = 0; r < reps; ++r) {
    Rng rng = Rng::for_replication(11011, static_cast<std::uint64_t>(r));
    SequentialKde kde(default_unit_grid(), kernel, schedule);
    for (long i = 0; i < n; ++i) kde.observe(density.sample(rng));
    ise[static_cast<std::size_t>(r)] =
        integrated_squared_error([&](double x) { return kde.eval(x); },
                                 [&](double x) { return density.pdf(x); },
                                 interior)
            .value;
  }
  const auto mc = mean_stderr(ise);
  const double curvature = density.curvature_integral(0.1, 0.9);
  const double oracle = kde_leading_risk(curvature, kernel, schedule, n);
  const double gap = std::fabs(mc.mean - oracle) / oracle;
  std::ostringstream ss;
  ss << "MC risk " << mc.mean << " (se " << mc.std_error << ") vs oracle "
     << oracle << ", relative gap " << gap << " (tolerance 0.30)";
  return {gap <= 0.30, ss.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<const char*, std::function<Outcome()>>> all = {
      {1, {"incremental equals dense variable-weight solve", criterion1}},
      {2, {"rank-one inverse updates match dense inversion", criterion2}},
      {3, {"sequential density estimation rate", criterion3}},
      {4, {"sequential regression rate", criterion4}},
      {5, {"loss-curve reproduction and batch gap", criterion5}},
      {6, {"matching-exponent expert attains lowest risk", criterion6}},
      {7, {"mixture oracle inequality, empirical form", criterion7}},
      {8, {"update cost independent of stream length", criterion8}},
      {9, {"mixing weight algebra", criterion9}},
      {10, {"backfitting properties and recovery", criterion10}},
      {11, {"leading-order risk oracle sanity", criterion11}},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (const auto& [num, _] : all) selected.push_back(num);

  int failures = 0;
  for (const int num : selected) {
    const auto it = all.find(num);
    if (it == all.end()) {
      std::cerr << "unknown criterion " << num << "\n";
      ++failures;
      continue;
    }
    Outcome outcome;
    try {
      outcome = it->second.second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d: %s — %s\n",
                outcome.pass ? "PASS" : "FAIL", num, it->second.first,
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures;
}
