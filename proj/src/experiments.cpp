#include "seqsmooth/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "seqsmooth/batch.hpp"
#include "seqsmooth/csvio.hpp"
#include "seqsmooth/density.hpp"

namespace seqsmooth {

namespace {

// Replication loop with per-slot results so aggregation order (and
// therefore output bytes) never depends on the thread count.
template <typename Body>
void parallel_reps(int count, Body&& body) {
  std::vector<std::string> errors(static_cast<std::size_t>(count));
  std::atomic<bool> failed{false};
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < count; ++r) {
    try {
      body(r);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(r)] = e.what();
      failed.store(true);
    }
  }
  if (failed.load())
    for (const auto& msg : errors)
      if (!msg.empty()) throw std::runtime_error("replication failed: " + msg);
}

double running_mean_or_zero(double sum, long count) {
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

// Prequential prediction with running-mean fallback for the empty state.
double predict_or_running_mean(const SequentialLocPoly& est, double x,
                               double y_sum, long t) {
  try {
    return est.predict(x);
  } catch (const EmptyEstimatorError&) {
    return running_mean_or_zero(y_sum, t);
  }
}

}  // namespace

// ----------------------------------------------------------------------
// Loss curves
// ----------------------------------------------------------------------

namespace {

struct LossRep {
  std::vector<std::vector<double>> seq;   // [constant][step]
  std::vector<std::vector<double>> batch; // [constant][step]
  std::vector<double> cv;                 // [step]
  // Grid fits at t = n, first replication only.
  std::vector<std::vector<double>> fit_seq;
  std::vector<std::vector<double>> fit_batch;
  std::vector<double> fit_cv;
};

LossRep run_loss_rep(const LossCurvesConfig& cfg, const TrueFunction& truth,
                     const KernelSpec& kernel, const EvaluationGrid& grid,
                     std::uint64_t stream_id, bool keep_fits) {
  const double exponent = 0.2; // h = c * t^(-1/5) on both sides
  const std::size_t nc = cfg.constants.size();
  const long steps = cfg.n - cfg.warmup;

  Rng rng = Rng::for_replication(cfg.seed, stream_id);
  SimConfig sim{cfg.n, cfg.sigma2, 0};
  const auto stream = generate_stream(sim, truth, rng);

  std::vector<SequentialLocPoly> seq;
  seq.reserve(nc);
  for (const double c : cfg.constants)
    seq.emplace_back(grid, kernel, BandwidthSchedule(c, exponent), cfg.degree);

  LossRep rep;
  rep.seq.assign(nc, std::vector<double>(static_cast<std::size_t>(steps)));
  rep.batch.assign(nc, std::vector<double>(static_cast<std::size_t>(steps)));
  if (cfg.run_cv) rep.cv.assign(static_cast<std::size_t>(steps), 0.0);

  double y_sum = 0.0;
  for (long t = 0; t < cfg.n; ++t) {
    const auto& obs = stream[static_cast<std::size_t>(t)];
    if (t >= cfg.warmup) {
      const std::size_t step = static_cast<std::size_t>(t - cfg.warmup);
      const auto prefix =
          std::span<const Observation>(stream.data(), static_cast<std::size_t>(t));
      const double nb = std::pow(static_cast<double>(t), -exponent);
      for (std::size_t ci = 0; ci < nc; ++ci) {
        const double pred = predict_or_running_mean(seq[ci], obs.x, y_sum, t);
        const double e = obs.y - pred;
        rep.seq[ci][step] = e * e;
      }
      for (std::size_t ci = 0; ci < nc; ++ci) {
        BatchFitConfig bcfg{cfg.degree, cfg.constants[ci] * nb, kernel, 1e-9};
        const double e = obs.y - batch_locpoly_fit(prefix, bcfg, obs.x);
        rep.batch[ci][step] = e * e;
      }
      if (cfg.run_cv) {
        const double c_star =
            loo_cv_constant(prefix, cfg.constants, cfg.degree, kernel, exponent);
        BatchFitConfig bcfg{cfg.degree, c_star * nb, kernel, 1e-9};
        const double e = obs.y - batch_locpoly_fit(prefix, bcfg, obs.x);
        rep.cv[step] = e * e;
      }
    }
    for (auto& est : seq) est.observe(obs.x, obs.y);
    y_sum += obs.y;
  }

  if (keep_fits) {
    const double nb = std::pow(static_cast<double>(cfg.n), -exponent);
    rep.fit_seq.reserve(nc);
    rep.fit_batch.reserve(nc);
    for (std::size_t ci = 0; ci < nc; ++ci) {
      rep.fit_seq.push_back(seq[ci].predictions());
      BatchFitConfig bcfg{cfg.degree, cfg.constants[ci] * nb, kernel, 1e-9};
      std::vector<double> fit(static_cast<std::size_t>(grid.count()));
      for (int g = 0; g < grid.count(); ++g)
        fit[static_cast<std::size_t>(g)] =
            batch_locpoly_fit(stream, bcfg, grid.point(g));
      rep.fit_batch.push_back(std::move(fit));
    }
    if (cfg.run_cv) {
      const double c_star =
          loo_cv_constant(stream, cfg.constants, cfg.degree, kernel, exponent);
      BatchFitConfig bcfg{cfg.degree, c_star * nb, kernel, 1e-9};
      rep.fit_cv.resize(static_cast<std::size_t>(grid.count()));
      for (int g = 0; g < grid.count(); ++g)
        rep.fit_cv[static_cast<std::size_t>(g)] =
            batch_locpoly_fit(stream, bcfg, grid.point(g));
    }
  }
  return rep;
}

}  // namespace

std::vector<LossCurvesResult> run_loss_curves(const LossCurvesConfig& cfg) {
  if (cfg.reps < 1) throw std::invalid_argument("run_loss_curves: reps >= 1");
  if (cfg.warmup < 1 || cfg.warmup >= cfg.n)
    throw std::invalid_argument("run_loss_curves: need 1 <= warmup < n");
  const KernelSpec kernel = kernel_by_name(cfg.kernel);
  const EvaluationGrid grid = default_unit_grid();
  const std::size_t nc = cfg.constants.size();
  if (nc == 0) throw std::invalid_argument("run_loss_curves: no constants");
  const long steps = cfg.n - cfg.warmup;

  std::vector<LossCurvesResult> results;
  results.reserve(cfg.functions.size());

  for (std::size_t fi = 0; fi < cfg.functions.size(); ++fi) {
    const TrueFunction truth = true_function_by_name(cfg.functions[fi]);
    std::vector<LossRep> reps(static_cast<std::size_t>(cfg.reps));
    parallel_reps(cfg.reps, [&](int r) {
      const std::uint64_t stream_id =
          static_cast<std::uint64_t>(fi) * 1000003ULL +
          static_cast<std::uint64_t>(r);
      reps[static_cast<std::size_t>(r)] =
          run_loss_rep(cfg, truth, kernel, grid, stream_id, r == 0);
    });

    // Per-step means over replications, then running averages.
    auto mean_curve = [&](auto&& get) {
      std::vector<double> curve(static_cast<std::size_t>(steps), 0.0);
      for (const auto& rep : reps)
        for (long s = 0; s < steps; ++s)
          curve[static_cast<std::size_t>(s)] += get(rep, s);
      double acc = 0.0;
      for (long s = 0; s < steps; ++s) {
        acc += curve[static_cast<std::size_t>(s)] /
               static_cast<double>(cfg.reps);
        curve[static_cast<std::size_t>(s)] = acc / static_cast<double>(s + 1);
      }
      return curve;
    };

    LossCurvesResult out;
    out.function = cfg.functions[fi];
    out.t.resize(static_cast<std::size_t>(steps));
    for (long s = 0; s < steps; ++s)
      out.t[static_cast<std::size_t>(s)] = cfg.warmup + s + 1;

    std::vector<std::vector<double>> seq_curves(nc);
    std::vector<std::vector<double>> batch_curves(nc);
    for (std::size_t ci = 0; ci < nc; ++ci) {
      seq_curves[ci] =
          mean_curve([&](const LossRep& rep, long s) { return rep.seq[ci][static_cast<std::size_t>(s)]; });
      batch_curves[ci] =
          mean_curve([&](const LossRep& rep, long s) { return rep.batch[ci][static_cast<std::size_t>(s)]; });
    }

    std::size_t best_seq = 0;
    std::size_t best_batch = 0;
    for (std::size_t ci = 1; ci < nc; ++ci) {
      if (seq_curves[ci].back() < seq_curves[best_seq].back()) best_seq = ci;
      if (batch_curves[ci].back() < batch_curves[best_batch].back())
        best_batch = ci;
    }
    out.best_seq_constant = cfg.constants[best_seq];
    out.best_batch_constant = cfg.constants[best_batch];
    out.seq_avg_loss = seq_curves[best_seq];
    out.batch_avg_loss = batch_curves[best_batch];
    out.final_seq_loss = out.seq_avg_loss.back();
    out.final_batch_loss = out.batch_avg_loss.back();
    if (cfg.run_cv) {
      out.cv_avg_loss = mean_curve(
          [&](const LossRep& rep, long s) { return rep.cv[static_cast<std::size_t>(s)]; });
      out.final_cv_loss = out.cv_avg_loss.back();
    }

    out.fit_x = grid.points();
    out.fit_truth.resize(out.fit_x.size());
    for (std::size_t g = 0; g < out.fit_x.size(); ++g)
      out.fit_truth[g] = truth(out.fit_x[g]);
    out.fit_seq = reps[0].fit_seq[best_seq];
    out.fit_batch = reps[0].fit_batch[best_batch];
    if (cfg.run_cv) out.fit_cv = reps[0].fit_cv;

    results.push_back(std::move(out));
  }
  return results;
}

// ----------------------------------------------------------------------
// Smoothness adaptation
// ----------------------------------------------------------------------

AdaptationResult run_adaptation(const AdaptationConfig& cfg) {
  if (cfg.reps < 1) throw std::invalid_argument("run_adaptation: reps >= 1");
  if (cfg.expert_alphas.empty())
    throw std::invalid_argument("run_adaptation: no experts");
  const KernelSpec kernel = kernel_by_name(cfg.kernel);
  const EvaluationGrid grid = default_unit_grid();
  const std::size_t ne = cfg.expert_alphas.size();
  const std::size_t nt = static_cast<std::size_t>(cfg.n);

  AdaptationResult result;
  for (const double a : cfg.expert_alphas)
    result.expert_labels.push_back("alpha=" + format_double(a));

  for (std::size_t ai = 0; ai < cfg.true_alphas.size(); ++ai) {
    const double alpha = cfg.true_alphas[ai];
    const TrueFunction truth = holder_function(alpha);
    const double truth0 = truth(cfg.x0);

    // [rep][expert][t] squared error at x0, plus the mixture's.
    std::vector<std::vector<std::vector<double>>> expert_sq(
        static_cast<std::size_t>(cfg.reps));
    std::vector<std::vector<double>> mix_sq(static_cast<std::size_t>(cfg.reps));
    std::vector<std::vector<double>> final_w(static_cast<std::size_t>(cfg.reps));
    std::vector<std::vector<MixtureTraceRow>> traces(
        static_cast<std::size_t>(cfg.reps));

    parallel_reps(cfg.reps, [&](int r) {
      Rng rng = Rng::for_replication(
          cfg.seed, static_cast<std::uint64_t>(ai) * 1000003ULL +
                        static_cast<std::uint64_t>(r));
      SimConfig sim{cfg.n, cfg.sigma2, 0};
      const auto stream = generate_stream(sim, truth, rng);

      // One kernel-estimator expert per candidate Holder exponent, with
      // the exponent-matched bandwidth decay 1/(2a+1).
      ExpertPool pool(cfg.mixer);
      for (std::size_t k = 0; k < ne; ++k) {
        const double a = cfg.expert_alphas[k];
        pool.add_expert(
            result.expert_labels[k],
            SequentialNw(grid, kernel,
                         BandwidthSchedule(cfg.c, 1.0 / (2.0 * a + 1.0))));
      }

      auto& esq = expert_sq[static_cast<std::size_t>(r)];
      esq.assign(ne, std::vector<double>(nt, 0.0));
      auto& msq = mix_sq[static_cast<std::size_t>(r)];
      msq.assign(nt, 0.0);

      for (std::size_t t = 0; t < nt; ++t) {
        const auto& obs = stream[t];
        pool.observe(obs.x, obs.y);
        for (std::size_t k = 0; k < ne; ++k) {
          const double e = pool.expert_prediction(k, cfg.x0) - truth0;
          esq[k][t] = e * e;
        }
        const double em = pool.predict(cfg.x0) - truth0;
        msq[t] = em * em;
        if (r == 0) {
          for (std::size_t k = 0; k < ne; ++k)
            traces[0].push_back({static_cast<long>(t + 1),
                                 result.expert_labels[k], pool.losses()[k],
                                 pool.weights()[k]});
        }
      }
      final_w[static_cast<std::size_t>(r)] = pool.weights();
    });

    AdaptationAlphaResult out;
    out.alpha = alpha;
    out.t.resize(nt);
    for (std::size_t t = 0; t < nt; ++t) out.t[t] = static_cast<long>(t + 1);
    out.expert_risk.assign(ne, std::vector<double>(nt, 0.0));
    out.mixture_risk.assign(nt, 0.0);
    for (int r = 0; r < cfg.reps; ++r) {
      for (std::size_t k = 0; k < ne; ++k)
        for (std::size_t t = 0; t < nt; ++t)
          out.expert_risk[k][t] += expert_sq[static_cast<std::size_t>(r)][k][t];
      for (std::size_t t = 0; t < nt; ++t)
        out.mixture_risk[t] += mix_sq[static_cast<std::size_t>(r)][t];
    }
    const double inv_reps = 1.0 / static_cast<double>(cfg.reps);
    for (auto& curve : out.expert_risk)
      for (double& v : curve) v *= inv_reps;
    for (double& v : out.mixture_risk) v *= inv_reps;

    std::vector<double> tmp(static_cast<std::size_t>(cfg.reps));
    out.expert_final.resize(ne);
    for (std::size_t k = 0; k < ne; ++k) {
      for (int r = 0; r < cfg.reps; ++r)
        tmp[static_cast<std::size_t>(r)] =
            expert_sq[static_cast<std::size_t>(r)][k][nt - 1];
      out.expert_final[k] = mean_stderr(tmp);
    }
    for (int r = 0; r < cfg.reps; ++r)
      tmp[static_cast<std::size_t>(r)] = mix_sq[static_cast<std::size_t>(r)][nt - 1];
    out.mixture_final = mean_stderr(tmp);

    out.final_weights.assign(ne, 0.0);
    for (int r = 0; r < cfg.reps; ++r)
      for (std::size_t k = 0; k < ne; ++k)
        out.final_weights[k] += final_w[static_cast<std::size_t>(r)][k];
    for (double& w : out.final_weights) w *= inv_reps;

    out.trace = std::move(traces[0]);
    result.per_alpha.push_back(std::move(out));
  }
  return result;
}

// ----------------------------------------------------------------------
// Rate ladders
// ----------------------------------------------------------------------

KdeRateResult run_kde_rate(const KdeRateConfig& cfg) {
  if (cfg.reps < 1 || cfg.ladder.empty())
    throw std::invalid_argument("run_kde_rate: bad config");
  const KernelSpec kernel = kernel_by_name(cfg.kernel);
  const EvaluationGrid grid = default_unit_grid();
  const EvaluationGrid interior = interior_grid();
  const TruncatedGaussianDensity density(cfg.density_mean, cfg.density_sd);
  const BandwidthSchedule schedule(cfg.c, cfg.exponent);

  const int total = static_cast<int>(cfg.ladder.size()) * cfg.reps;
  std::vector<double> ise(static_cast<std::size_t>(total), 0.0);
  std::vector<double> snapshot;

  parallel_reps(total, [&](int job) {
    const int ni = job / cfg.reps;
    const int r = job % cfg.reps;
    const long n = cfg.ladder[static_cast<std::size_t>(ni)];
    Rng rng = Rng::for_replication(cfg.seed, static_cast<std::uint64_t>(job));
    SequentialKde kde(grid, kernel, schedule);
    for (long i = 0; i < n; ++i) kde.observe(density.sample(rng));
    ise[static_cast<std::size_t>(job)] =
        integrated_squared_error([&](double x) { return kde.eval(x); },
                                 [&](double x) { return density.pdf(x); },
                                 interior)
            .value;
    if (ni + 1 == static_cast<int>(cfg.ladder.size()) && r == cfg.reps - 1)
      snapshot = kde.values();
  });

  KdeRateResult out;
  out.report.metric = "ise-interior";
  out.report.estimator = "seq-kde(c=" + format_double(cfg.c) +
                         ",k=" + format_double(cfg.exponent) + ")";
  for (std::size_t ni = 0; ni < cfg.ladder.size(); ++ni) {
    const auto first = ise.begin() + static_cast<std::ptrdiff_t>(ni) * cfg.reps;
    std::vector<double> vals(first, first + cfg.reps);
    const auto ms = mean_stderr(vals);
    out.report.rows.push_back(
        {cfg.ladder[ni], ms.mean, ms.std_error, cfg.reps});
  }
  out.slope = rate_slope(out.report);
  out.snapshot_x = grid.points();
  out.snapshot_f = std::move(snapshot);
  return out;
}

LocPolyRateResult run_locpoly_rate(const LocPolyRateConfig& cfg) {
  if (cfg.reps < 1 || cfg.ladder.empty())
    throw std::invalid_argument("run_locpoly_rate: bad config");
  const KernelSpec kernel = kernel_by_name(cfg.kernel);
  const EvaluationGrid grid = default_unit_grid();
  const EvaluationGrid interior = interior_grid();
  const TrueFunction truth = true_function_by_name(cfg.function);

  const int total = static_cast<int>(cfg.ladder.size()) * cfg.reps;
  std::vector<double> ise(static_cast<std::size_t>(total), 0.0);
  std::vector<double> snapshot;

  parallel_reps(total, [&](int job) {
    const int ni = job / cfg.reps;
    const int r = job % cfg.reps;
    const long n = cfg.ladder[static_cast<std::size_t>(ni)];
    Rng rng = Rng::for_replication(cfg.seed, static_cast<std::uint64_t>(job));
    SimConfig sim{n, cfg.sigma2, 0};
    const auto stream = generate_stream(sim, truth, rng);
    auto est = SequentialLocPoly::with_auto_schedule(grid, kernel, cfg.c,
                                                     cfg.degree);
    for (const auto& obs : stream) est.observe(obs.x, obs.y);
    ise[static_cast<std::size_t>(job)] =
        integrated_squared_error([&](double x) { return est.predict(x); },
                                 [&](double x) { return truth(x); }, interior)
            .value;
    if (ni + 1 == static_cast<int>(cfg.ladder.size()) && r == cfg.reps - 1)
      snapshot = est.predictions();
  });

  LocPolyRateResult out;
  out.report.metric = "ise-interior";
  out.report.estimator = "seq-locpoly(p=" + std::to_string(cfg.degree) +
                         ",c=" + format_double(cfg.c) + ")";
  for (std::size_t ni = 0; ni < cfg.ladder.size(); ++ni) {
    const auto first = ise.begin() + static_cast<std::ptrdiff_t>(ni) * cfg.reps;
    std::vector<double> vals(first, first + cfg.reps);
    const auto ms = mean_stderr(vals);
    out.report.rows.push_back(
        {cfg.ladder[ni], ms.mean, ms.std_error, cfg.reps});
  }
  out.slope = rate_slope(out.report);
  out.snapshot_x = grid.points();
  out.snapshot_m = std::move(snapshot);
  return out;
}

// ----------------------------------------------------------------------
// Update cost
// ----------------------------------------------------------------------

namespace {

double time_sequential_window(const UpdateCostConfig& cfg,
                              const KernelSpec& kernel,
                              const EvaluationGrid& grid,
                              std::span<const Observation> stream, long n,
                              int repeats) {
  using clock = std::chrono::steady_clock;
  double total_us = 0.0;
  for (int rep = 0; rep < repeats; ++rep) {
    auto est =
        SequentialLocPoly::with_auto_schedule(grid, kernel, cfg.c, cfg.degree);
    const long lead_in = n - cfg.window;
    for (long i = 0; i < lead_in; ++i)
      est.observe(stream[static_cast<std::size_t>(i)].x,
                  stream[static_cast<std::size_t>(i)].y);
    const auto t0 = clock::now();
    for (long i = lead_in; i < n; ++i)
      est.observe(stream[static_cast<std::size_t>(i)].x,
                  stream[static_cast<std::size_t>(i)].y);
    const auto t1 = clock::now();
    total_us += std::chrono::duration<double, std::micro>(t1 - t0).count() /
                static_cast<double>(cfg.window);
  }
  return total_us / static_cast<double>(repeats);
}

double time_batch_refit(const UpdateCostConfig& cfg, const KernelSpec& kernel,
                        const EvaluationGrid& grid,
                        std::span<const Observation> stream, long n,
                        int repeats) {
  using clock = std::chrono::steady_clock;
  const double exponent = 1.0 / (2.0 * cfg.degree + 3.0);
  BatchFitConfig bcfg{cfg.degree,
                      cfg.c * std::pow(static_cast<double>(n), -exponent),
                      kernel, 1e-9};
  const auto data = stream.first(static_cast<std::size_t>(n));
  volatile double sink = 0.0;
  double total_us = 0.0;
  for (int rep = 0; rep < repeats; ++rep) {
    const auto t0 = clock::now();
    double acc = 0.0;
    for (int g = 0; g < grid.count(); ++g)
      acc += batch_locpoly_fit(data, bcfg, grid.point(g));
    const auto t1 = clock::now();
    sink = sink + acc;
    total_us += std::chrono::duration<double, std::micro>(t1 - t0).count();
  }
  return total_us / static_cast<double>(repeats);
}

}  // namespace

UpdateCostResult run_update_cost(const UpdateCostConfig& cfg) {
  if (cfg.window < 1 || cfg.small_n < cfg.window || cfg.large_n <= cfg.small_n)
    throw std::invalid_argument("run_update_cost: bad config");
  const KernelSpec kernel = kernel_by_name(cfg.kernel);
  const EvaluationGrid grid(0.0, 1.0, cfg.grid_count);
  const TrueFunction truth = true_function_by_name(cfg.function);
  SimConfig sim{cfg.large_n, cfg.sigma2, cfg.seed};
  const auto stream = generate_stream(sim, truth);

  UpdateCostResult out;
  // Warm pass so first-touch page faults do not land in the timings.
  time_sequential_window(cfg, kernel, grid, stream, cfg.small_n, 1);
  out.seq_small_us =
      time_sequential_window(cfg, kernel, grid, stream, cfg.small_n, 5);
  out.seq_large_us =
      time_sequential_window(cfg, kernel, grid, stream, cfg.large_n, 3);
  out.batch_small_us =
      time_batch_refit(cfg, kernel, grid, stream, cfg.small_n,
                       std::max(cfg.batch_repeats, 20));
  out.batch_large_us =
      time_batch_refit(cfg, kernel, grid, stream, cfg.large_n, cfg.batch_repeats);
  return out;
}

// ----------------------------------------------------------------------
// Backfitting demo
// ----------------------------------------------------------------------

namespace {

double demo_component1(double x) {
  const double u = x - 0.5;
  return u * u - 1.0 / 12.0;
}

double demo_component2(double x) { return std::sin(2.0 * M_PI * x); }

}  // namespace

double backfit_demo_truth(double x1, double x2) {
  return demo_component1(x1) + demo_component2(x2);
}

BackfitDemoResult run_backfit_demo(const BackfitDemoConfig& cfg) {
  const KernelSpec kernel = kernel_by_name(cfg.kernel);
  const EvaluationGrid grid = default_unit_grid();
  AdditiveModel model = AdditiveModel::locpoly_components(
      2, grid, kernel, cfg.c, {cfg.tol, cfg.max_iter});

  Rng rng(cfg.seed);
  const double sd = std::sqrt(cfg.sigma2);
  for (long i = 0; i < cfg.n; ++i) {
    const double x1 = rng.uniform01();
    const double x2 = rng.uniform01();
    const double y = backfit_demo_truth(x1, x2) + sd * rng.normal();
    const double xv[2] = {x1, x2};
    model.observe(std::span<const double>(xv, 2), y);
  }

  BackfitDemoResult out;
  out.intercept = model.intercept();
  out.nonconverged_fraction =
      static_cast<double>(model.nonconverged_steps()) /
      static_cast<double>(std::max<long>(model.step(), 1));

  // Interior 2-D integral of the squared prediction error, tensor
  // trapezoid rule.
  const EvaluationGrid interior = interior_grid(41);
  double acc = 0.0;
  for (int i = 0; i < interior.count(); ++i) {
    const double wi = (i == 0 || i + 1 == interior.count()) ? 0.5 : 1.0;
    for (int j = 0; j < interior.count(); ++j) {
      const double wj = (j == 0 || j + 1 == interior.count()) ? 0.5 : 1.0;
      const double xv[2] = {interior.point(i), interior.point(j)};
      const double e = model.predict(std::span<const double>(xv, 2)) -
                       backfit_demo_truth(xv[0], xv[1]);
      acc += wi * wj * e * e;
    }
  }
  out.ise_interior = acc * interior.step() * interior.step();

  out.grid_x = grid.points();
  out.component_values.assign(2, std::vector<double>(out.grid_x.size()));
  out.component_truth.assign(2, std::vector<double>(out.grid_x.size()));
  for (std::size_t g = 0; g < out.grid_x.size(); ++g) {
    const double x = out.grid_x[g];
    out.component_values[0][g] = model.component_value(0, x);
    out.component_values[1][g] = model.component_value(1, x);
    out.component_truth[0][g] = demo_component1(x);
    out.component_truth[1][g] = demo_component2(x);
  }
  return out;
}

}  // namespace seqsmooth
