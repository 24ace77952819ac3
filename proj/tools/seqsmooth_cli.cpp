// Command-line front end for the streaming smoothing experiments: runs
// the study configurations, writes CSV (and optional SVG) artifacts,
// and records a manifest sufficient to reproduce every run byte for
// byte.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "seqsmooth/csvio.hpp"
#include "seqsmooth/density.hpp"
#include "seqsmooth/experiments.hpp"
#include "seqsmooth/parallel.hpp"
#include "seqsmooth/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace seqsmooth;

namespace {

struct GlobalOptions {
  std::string out_dir = "out";
  std::uint64_t seed = 12345;
  int threads = 0; // 0 = library default
  bool svg = false;
};

struct RunArtifacts {
  std::vector<std::string> files;

  std::string path(const GlobalOptions& g, const std::string& name) {
    files.push_back(name);
    return (fs::path(g.out_dir) / name).string();
  }
};

void write_manifest(const GlobalOptions& g, const std::string& command,
                    const json& config, const RunArtifacts& artifacts) {
  json m;
  m["command"] = command;
  m["seed"] = g.seed;
  m["config"] = config;
  m["outputs"] = artifacts.files;
  std::ofstream out(fs::path(g.out_dir) / "manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest");
  out << m.dump(2) << "\n";
}

void ensure_outputs_exist(const GlobalOptions& g,
                          const RunArtifacts& artifacts) {
  for (const auto& name : artifacts.files)
    if (!fs::exists(fs::path(g.out_dir) / name))
      throw std::runtime_error("expected output missing: " + name);
}

void write_risk_report_csv(const std::string& path, const RiskReport& report) {
  CsvWriter csv(path,
                {"n", "mean_risk", "stderr", "reps", "metric",
                 "estimator_label"});
  for (const auto& row : report.rows)
    csv.row({format_double(static_cast<double>(row.n)),
             format_double(row.mean_risk), format_double(row.std_error),
             std::to_string(row.reps), report.metric, report.estimator});
}

void write_slope_summary(const std::string& path, const RiskReport& report,
                         double slope) {
  json j;
  j["slope"] = slope;
  j["metric"] = report.metric;
  j["estimator"] = report.estimator;
  j["points"] = report.rows.size();
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

// Applies an exact power-law decay in place of measured risks; keeps
// the whole output path exercisable without the heavy computation.
void apply_stub_decay(RiskReport& report, const std::vector<long>& ladder,
                      int reps, double decay) {
  report.rows.clear();
  for (const long n : ladder)
    report.rows.push_back(
        {n, std::pow(static_cast<double>(n), -decay), 0.0, reps});
  report.estimator = "stub-decay";
}

int cmd_fig1(const GlobalOptions& g, const LossCurvesConfig& cfg) {
  RunArtifacts art;
  const auto results = run_loss_curves(cfg);
  for (const auto& r : results) {
    {
      std::vector<std::string> header = {"t", "avg_loss_seq",
                                         "avg_loss_batch"};
      if (cfg.run_cv) header.push_back("avg_loss_cv");
      CsvWriter csv(art.path(g, "fig1_" + r.function + "_avg_loss.csv"),
                    header);
      for (std::size_t i = 0; i < r.t.size(); ++i) {
        std::vector<double> row = {static_cast<double>(r.t[i]),
                                   r.seq_avg_loss[i], r.batch_avg_loss[i]};
        if (cfg.run_cv) row.push_back(r.cv_avg_loss[i]);
        csv.row(row);
      }
    }
    {
      std::vector<std::string> header = {"x", "truth", "fit_seq", "fit_batch"};
      if (cfg.run_cv) header.push_back("fit_cv");
      CsvWriter csv(art.path(g, "fig1_" + r.function + "_fit.csv"), header);
      for (std::size_t i = 0; i < r.fit_x.size(); ++i) {
        std::vector<double> row = {r.fit_x[i], r.fit_truth[i], r.fit_seq[i],
                                   r.fit_batch[i]};
        if (cfg.run_cv) row.push_back(r.fit_cv[i]);
        csv.row(row);
      }
    }
    if (g.svg) {
      std::vector<ChartSeries> series;
      std::vector<double> ts(r.t.begin(), r.t.end());
      series.push_back({"sequential c=" + format_double(r.best_seq_constant),
                        ts, r.seq_avg_loss});
      series.push_back({"batch c=" + format_double(r.best_batch_constant), ts,
                        r.batch_avg_loss});
      if (cfg.run_cv) series.push_back({"batch cv", ts, r.cv_avg_loss});
      write_line_chart_svg(art.path(g, "fig1_" + r.function + "_avg_loss.svg"),
                           r.function + " average prediction loss", series);
    }
    std::cout << r.function << ": best seq c=" << r.best_seq_constant
              << " loss=" << r.final_seq_loss
              << " | best batch c=" << r.best_batch_constant
              << " loss=" << r.final_batch_loss;
    if (cfg.run_cv) std::cout << " | cv loss=" << r.final_cv_loss;
    std::cout << "\n";
  }

  json config;
  config["functions"] = cfg.functions;
  config["n"] = cfg.n;
  config["sigma2"] = cfg.sigma2;
  config["warmup"] = cfg.warmup;
  config["reps"] = cfg.reps;
  config["constants"] = cfg.constants;
  config["degree"] = cfg.degree;
  config["kernel"] = cfg.kernel;
  config["run_cv"] = cfg.run_cv;
  write_manifest(g, "fig1", config, art);
  ensure_outputs_exist(g, art);
  return 0;
}

int cmd_fig2(const GlobalOptions& g, const AdaptationConfig& cfg,
             bool emit_trace) {
  RunArtifacts art;
  const auto res = run_adaptation(cfg);
  for (const auto& pa : res.per_alpha) {
    const std::string tag = format_double(pa.alpha);
    {
      std::vector<std::string> header = {"n"};
      for (const auto& label : res.expert_labels)
        header.push_back("risk_" + label);
      header.push_back("risk_mixture");
      CsvWriter csv(art.path(g, "fig2_alpha_" + tag + "_risk.csv"), header);
      for (std::size_t i = 0; i < pa.t.size(); ++i) {
        std::vector<double> row = {static_cast<double>(pa.t[i])};
        for (const auto& curve : pa.expert_risk) row.push_back(curve[i]);
        row.push_back(pa.mixture_risk[i]);
        csv.row(row);
      }
    }
    if (emit_trace) {
      CsvWriter csv(art.path(g, "fig2_alpha_" + tag + "_trace.csv"),
                    {"t", "expert_label", "loss", "weight"});
      for (const auto& row : pa.trace)
        csv.row({std::to_string(row.t), row.expert, format_double(row.loss),
                 format_double(row.weight)});
    }
    if (g.svg) {
      std::vector<ChartSeries> series;
      std::vector<double> ts(pa.t.begin(), pa.t.end());
      for (std::size_t k = 0; k < res.expert_labels.size(); ++k)
        series.push_back({res.expert_labels[k], ts, pa.expert_risk[k]});
      series.push_back({"mixture", ts, pa.mixture_risk});
      write_line_chart_svg(art.path(g, "fig2_alpha_" + tag + "_risk.svg"),
                           "pointwise risk, true alpha=" + tag, series);
    }
    std::cout << "alpha=" << tag << ":";
    for (std::size_t k = 0; k < res.expert_labels.size(); ++k)
      std::cout << " " << res.expert_labels[k]
                << " risk=" << pa.expert_final[k].mean;
    std::cout << " | mixture risk=" << pa.mixture_final.mean << "\n";
  }

  json config;
  config["true_alphas"] = cfg.true_alphas;
  config["expert_alphas"] = cfg.expert_alphas;
  config["c"] = cfg.c;
  config["sigma2"] = cfg.sigma2;
  config["n"] = cfg.n;
  config["reps"] = cfg.reps;
  config["x0"] = cfg.x0;
  config["eta"] = cfg.mixer.effective_eta();
  config["clip_bound"] = cfg.mixer.clip_bound;
  config["kernel"] = cfg.kernel;
  write_manifest(g, "fig2", config, art);
  ensure_outputs_exist(g, art);
  return 0;
}

int cmd_rate_kde(const GlobalOptions& g, const KdeRateConfig& cfg,
                 double stub_decay) {
  RunArtifacts art;
  RiskReport report;
  double slope;
  if (stub_decay > 0.0) {
    report.metric = "ise-interior";
    apply_stub_decay(report, cfg.ladder, cfg.reps, stub_decay);
    slope = rate_slope(report);
  } else {
    auto res = run_kde_rate(cfg);
    report = std::move(res.report);
    slope = res.slope;
    CsvWriter csv(art.path(g, "rate_kde_snapshot.csv"), {"x", "f_hat"});
    for (std::size_t i = 0; i < res.snapshot_x.size(); ++i)
      csv.row(std::vector<double>{res.snapshot_x[i], res.snapshot_f[i]});
  }
  write_risk_report_csv(art.path(g, "rate_kde_risk.csv"), report);
  write_slope_summary(art.path(g, "rate_kde_slope.json"), report, slope);
  if (g.svg) {
    ChartSeries s;
    s.label = report.estimator;
    for (const auto& row : report.rows) {
      s.x.push_back(static_cast<double>(row.n));
      s.y.push_back(row.mean_risk);
    }
    write_line_chart_svg(art.path(g, "rate_kde_risk.svg"),
                         "density risk vs n (log-log)", {s}, true);
  }
  std::cout << "kde rate slope: " << slope << "\n";

  json config;
  config["ladder"] = cfg.ladder;
  config["reps"] = cfg.reps;
  config["c"] = cfg.c;
  config["exponent"] = cfg.exponent;
  config["density_mean"] = cfg.density_mean;
  config["density_sd"] = cfg.density_sd;
  config["kernel"] = cfg.kernel;
  config["stub_decay"] = stub_decay;
  write_manifest(g, "rate-kde", config, art);
  ensure_outputs_exist(g, art);
  return 0;
}

int cmd_rate_locpoly(const GlobalOptions& g, const LocPolyRateConfig& cfg,
                     double stub_decay) {
  RunArtifacts art;
  RiskReport report;
  double slope;
  if (stub_decay > 0.0) {
    report.metric = "ise-interior";
    apply_stub_decay(report, cfg.ladder, cfg.reps, stub_decay);
    slope = rate_slope(report);
  } else {
    auto res = run_locpoly_rate(cfg);
    report = std::move(res.report);
    slope = res.slope;
    CsvWriter csv(art.path(g, "rate_locpoly_snapshot.csv"), {"x0", "m_hat"});
    for (std::size_t i = 0; i < res.snapshot_x.size(); ++i)
      csv.row(std::vector<double>{res.snapshot_x[i], res.snapshot_m[i]});
  }
  write_risk_report_csv(art.path(g, "rate_locpoly_risk.csv"), report);
  write_slope_summary(art.path(g, "rate_locpoly_slope.json"), report, slope);
  std::cout << "locpoly rate slope: " << slope << "\n";

  json config;
  config["ladder"] = cfg.ladder;
  config["reps"] = cfg.reps;
  config["c"] = cfg.c;
  config["degree"] = cfg.degree;
  config["sigma2"] = cfg.sigma2;
  config["function"] = cfg.function;
  config["kernel"] = cfg.kernel;
  config["stub_decay"] = stub_decay;
  write_manifest(g, "rate-locpoly", config, art);
  ensure_outputs_exist(g, art);
  return 0;
}

int cmd_backfit(const GlobalOptions& g, const BackfitDemoConfig& cfg) {
  RunArtifacts art;
  const auto res = run_backfit_demo(cfg);
  {
    CsvWriter csv(art.path(g, "backfit_components.csv"),
                  {"j", "x", "m_j_hat"});
    for (std::size_t j = 0; j < res.component_values.size(); ++j)
      for (std::size_t i = 0; i < res.grid_x.size(); ++i)
        csv.row(std::vector<double>{static_cast<double>(j + 1), res.grid_x[i],
                                    res.component_values[j][i]});
  }
  {
    CsvWriter csv(art.path(g, "backfit_truth.csv"), {"j", "x", "m_j_true"});
    for (std::size_t j = 0; j < res.component_truth.size(); ++j)
      for (std::size_t i = 0; i < res.grid_x.size(); ++i)
        csv.row(std::vector<double>{static_cast<double>(j + 1), res.grid_x[i],
                                    res.component_truth[j][i]});
  }
  {
    json j;
    j["ise_interior"] = res.ise_interior;
    j["intercept"] = res.intercept;
    j["nonconverged_fraction"] = res.nonconverged_fraction;
    std::ofstream out(art.path(g, "backfit_summary.json"));
    out << j.dump(2) << "\n";
  }
  if (g.svg) {
    for (std::size_t j = 0; j < res.component_values.size(); ++j) {
      const std::string tag = std::to_string(j + 1);
      write_line_chart_svg(
          art.path(g, "backfit_component_" + tag + ".svg"),
          "component " + tag,
          {{"estimate", res.grid_x, res.component_values[j]},
           {"truth", res.grid_x, res.component_truth[j]}});
    }
  }
  std::cout << "backfit demo: interior ise=" << res.ise_interior
            << " intercept=" << res.intercept
            << " nonconverged=" << res.nonconverged_fraction << "\n";

  json config;
  config["n"] = cfg.n;
  config["sigma2"] = cfg.sigma2;
  config["c"] = cfg.c;
  config["tol"] = cfg.tol;
  config["max_iter"] = cfg.max_iter;
  config["kernel"] = cfg.kernel;
  write_manifest(g, "backfit-demo", config, art);
  ensure_outputs_exist(g, art);
  return 0;
}

int cmd_bench(const GlobalOptions& g, const UpdateCostConfig& cfg) {
  RunArtifacts art;
  const auto res = run_update_cost(cfg);
  {
    CsvWriter csv(art.path(g, "bench_update_cost.csv"),
                  {"estimator", "n", "microseconds"});
    csv.row({"sequential-update", std::to_string(cfg.small_n),
             format_double(res.seq_small_us)});
    csv.row({"sequential-update", std::to_string(cfg.large_n),
             format_double(res.seq_large_us)});
    csv.row({"batch-refit", std::to_string(cfg.small_n),
             format_double(res.batch_small_us)});
    csv.row({"batch-refit", std::to_string(cfg.large_n),
             format_double(res.batch_large_us)});
  }
  {
    json j;
    j["seq_ratio"] = res.seq_ratio();
    j["batch_ratio"] = res.batch_ratio();
    std::ofstream out(art.path(g, "bench_update_cost_summary.json"));
    out << j.dump(2) << "\n";
  }
  std::cout << "sequential per-update: " << res.seq_small_us << "us @"
            << cfg.small_n << " vs " << res.seq_large_us << "us @"
            << cfg.large_n << " (x" << res.seq_ratio() << ")\n"
            << "batch refit: " << res.batch_small_us << "us @" << cfg.small_n
            << " vs " << res.batch_large_us << "us @" << cfg.large_n << " (x"
            << res.batch_ratio() << ")\n";

  json config;
  config["small_n"] = cfg.small_n;
  config["large_n"] = cfg.large_n;
  config["window"] = cfg.window;
  config["degree"] = cfg.degree;
  config["c"] = cfg.c;
  config["grid_count"] = cfg.grid_count;
  config["kernel"] = cfg.kernel;
  write_manifest(g, "bench-update-cost", config, art);
  ensure_outputs_exist(g, art);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming kernel smoothing and regression experiments"};
  app.set_config("--config", "", "config file with long-option values");
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--out", g.out_dir, "output directory")
      ->envname("SEQSMOOTH_OUT")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "master RNG seed")->capture_default_str();
  app.add_option("--threads", g.threads,
                 "worker threads (0 = machine default)")
      ->capture_default_str();
  app.add_flag("--svg", g.svg, "also emit SVG charts");

  // fig1
  LossCurvesConfig f1cfg;
  bool no_cv = false;
  auto* fig1 = app.add_subcommand(
      "fig1", "loss curves: sequential vs batch vs batch-CV");
  fig1->fallthrough();
  fig1->add_option("--function", f1cfg.functions,
                   "subset of f1 f2 f3 f4 (default: all)");
  fig1->add_option("--n", f1cfg.n)->capture_default_str();
  fig1->add_option("--sigma2", f1cfg.sigma2)->capture_default_str();
  fig1->add_option("--warmup", f1cfg.warmup)->capture_default_str();
  fig1->add_option("--reps", f1cfg.reps)->capture_default_str();
  fig1->add_option("--constants", f1cfg.constants,
                   "bandwidth constant candidates");
  fig1->add_option("--degree", f1cfg.degree)->capture_default_str();
  fig1->add_option("--kernel", f1cfg.kernel)->capture_default_str();
  fig1->add_flag("--no-cv", no_cv, "skip the O(n^2)-per-step CV baseline");

  // fig2
  AdaptationConfig f2cfg;
  bool full = false;
  bool trace = false;
  auto* fig2 = app.add_subcommand(
      "fig2", "smoothness adaptation: expert risks and their mixture");
  fig2->fallthrough();
  fig2->add_option("--alphas", f2cfg.true_alphas, "true Holder exponents");
  fig2->add_option("--expert-alphas", f2cfg.expert_alphas);
  fig2->add_option("--c", f2cfg.c)->capture_default_str();
  fig2->add_option("--sigma2", f2cfg.sigma2)->capture_default_str();
  fig2->add_option("--n", f2cfg.n)->capture_default_str();
  auto* reps_opt = fig2->add_option("--reps", f2cfg.reps);
  reps_opt->capture_default_str();
  fig2->add_flag("--full", full, "use 1000 replications");
  fig2->add_option("--x0", f2cfg.x0)->capture_default_str();
  fig2->add_option("--eta", f2cfg.mixer.eta, "mixing learning rate (default 1/(8A^2))");
  fig2->add_option("--clip", f2cfg.mixer.clip_bound, "expert range bound A")
      ->capture_default_str();
  fig2->add_option("--kernel", f2cfg.kernel)->capture_default_str();
  fig2->add_flag("--trace", trace, "emit per-step loss/weight trace CSVs");

  // rate-kde
  KdeRateConfig kcfg;
  double kde_stub = 0.0;
  auto* rate_kde = app.add_subcommand(
      "rate-kde", "density estimation risk ladder and fitted rate");
  rate_kde->fallthrough();
  rate_kde->add_option("--ladder", kcfg.ladder, "sample sizes");
  rate_kde->add_option("--reps", kcfg.reps)->capture_default_str();
  rate_kde->add_option("--c", kcfg.c)->capture_default_str();
  rate_kde->add_option("--exponent", kcfg.exponent)->capture_default_str();
  rate_kde->add_option("--density-mean", kcfg.density_mean)
      ->capture_default_str();
  rate_kde->add_option("--density-sd", kcfg.density_sd)->capture_default_str();
  rate_kde->add_option("--kernel", kcfg.kernel)->capture_default_str();
  rate_kde->add_option("--stub-decay", kde_stub,
                       "plumbing self-check: report risks n^(-decay) "
                       "instead of running the estimator");

  // rate-locpoly
  LocPolyRateConfig lcfg;
  double locpoly_stub = 0.0;
  auto* rate_lp = app.add_subcommand(
      "rate-locpoly", "regression risk ladder and fitted rate");
  rate_lp->fallthrough();
  rate_lp->add_option("--ladder", lcfg.ladder, "sample sizes");
  rate_lp->add_option("--reps", lcfg.reps)->capture_default_str();
  rate_lp->add_option("--c", lcfg.c)->capture_default_str();
  rate_lp->add_option("--degree", lcfg.degree)->capture_default_str();
  rate_lp->add_option("--sigma2", lcfg.sigma2)->capture_default_str();
  rate_lp->add_option("--function", lcfg.function)->capture_default_str();
  rate_lp->add_option("--kernel", lcfg.kernel)->capture_default_str();
  rate_lp->add_option("--stub-decay", locpoly_stub,
                      "plumbing self-check, see rate-kde");

  // backfit-demo
  BackfitDemoConfig bcfg;
  auto* backfit = app.add_subcommand(
      "backfit-demo", "two-component additive model recovery");
  backfit->fallthrough();
  backfit->add_option("--n", bcfg.n)->capture_default_str();
  backfit->add_option("--sigma2", bcfg.sigma2)->capture_default_str();
  backfit->add_option("--c", bcfg.c)->capture_default_str();
  backfit->add_option("--tol", bcfg.tol)->capture_default_str();
  backfit->add_option("--max-iter", bcfg.max_iter)->capture_default_str();
  backfit->add_option("--kernel", bcfg.kernel)->capture_default_str();

  // bench-update-cost
  UpdateCostConfig ucfg;
  auto* bench = app.add_subcommand(
      "bench-update-cost", "per-observation cost: sequential vs batch refit");
  bench->fallthrough();
  bench->add_option("--small-n", ucfg.small_n)->capture_default_str();
  bench->add_option("--large-n", ucfg.large_n)->capture_default_str();
  bench->add_option("--window", ucfg.window)->capture_default_str();
  bench->add_option("--degree", ucfg.degree)->capture_default_str();
  bench->add_option("--c", ucfg.c)->capture_default_str();
  bench->add_option("--grid", ucfg.grid_count)->capture_default_str();
  bench->add_option("--kernel", ucfg.kernel)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    set_thread_count(g.threads);
    fs::create_directories(g.out_dir);

    if (fig1->parsed()) {
      f1cfg.seed = g.seed;
      f1cfg.run_cv = !no_cv;
      return cmd_fig1(g, f1cfg);
    }
    if (fig2->parsed()) {
      f2cfg.seed = g.seed;
      if (full && reps_opt->count() == 0) f2cfg.reps = 1000;
      return cmd_fig2(g, f2cfg, trace);
    }
    if (rate_kde->parsed()) {
      kcfg.seed = g.seed;
      return cmd_rate_kde(g, kcfg, kde_stub);
    }
    if (rate_lp->parsed()) {
      lcfg.seed = g.seed;
      return cmd_rate_locpoly(g, lcfg, locpoly_stub);
    }
    if (backfit->parsed()) {
      bcfg.seed = g.seed;
      return cmd_backfit(g, bcfg);
    }
    if (bench->parsed()) {
      ucfg.seed = g.seed;
      return cmd_bench(g, ucfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
