#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqsmooth/additive.hpp"
#include "seqsmooth/mixing.hpp"
#include "seqsmooth/sim.hpp"

namespace seqsmooth {

// ---------------------------------------------------------------------
// Loss-curve comparison: best sequential constant vs best batch constant
// vs per-step cross-validated batch, on the four benchmark functions.
// ---------------------------------------------------------------------

struct LossCurvesConfig {
  std::vector<std::string> functions = {"f1", "f2", "f3", "f4"};
  long n = 150;
  double sigma2 = 0.5;
  long warmup = 50;
  int reps = 100;
  std::vector<double> constants = {0.05, 0.07, 0.1, 0.3, 0.5, 0.7, 1.0, 1.5};
  int degree = 1;
  std::string kernel = "gaussian";
  std::uint64_t seed = 12345;
  bool run_cv = true; // the O(n^2)-per-step baseline; skippable
};

struct LossCurvesResult {
  std::string function;
  double best_seq_constant = 0.0;
  double best_batch_constant = 0.0;
  std::vector<long> t;                // warmup+1 .. n
  std::vector<double> seq_avg_loss;   // running averages, mean over reps
  std::vector<double> batch_avg_loss;
  std::vector<double> cv_avg_loss;    // empty when run_cv is false
  double final_seq_loss = 0.0;
  double final_batch_loss = 0.0;
  double final_cv_loss = 0.0;
  // Fitted curves at t = n from the first replication, best constants.
  std::vector<double> fit_x;
  std::vector<double> fit_truth;
  std::vector<double> fit_seq;
  std::vector<double> fit_batch;
  std::vector<double> fit_cv;
};

std::vector<LossCurvesResult> run_loss_curves(const LossCurvesConfig& cfg);

// ---------------------------------------------------------------------
// Smoothness adaptation: pointwise risk at the critical point for a
// family of kernel-estimator experts with bandwidth exponents matched
// to different Holder exponents, plus their exponential-weight mixture.
// ---------------------------------------------------------------------

struct AdaptationConfig {
  std::vector<double> true_alphas = {1.0, 1.5, 2.0, 2.5};
  std::vector<double> expert_alphas = {1.0, 1.5, 2.0, 2.5};
  double c = 0.4;
  double sigma2 = 0.01;
  long n = 150;
  int reps = 200;
  double x0 = 0.5;
  MixerConfig mixer;
  // At c = 0.4 the matching-exponent ordering emerges with the compact
  // kernel (its effective smoothing scale at a given c is about half
  // the Gaussian's); with "gaussian" at the same c the smallest-
  // exponent expert dominates every truth until far larger n.
  std::string kernel = "epanechnikov";
  std::uint64_t seed = 12345;
};

struct MixtureTraceRow {
  long t = 0;
  std::string expert;
  double loss = 0.0;
  double weight = 0.0;
};

struct AdaptationAlphaResult {
  double alpha = 0.0;
  std::vector<long> t; // 1 .. n
  std::vector<std::vector<double>> expert_risk; // [expert][t], mean over reps
  std::vector<double> mixture_risk;             // [t], mean over reps
  std::vector<MeanStderr> expert_final;         // risk at t = n
  MeanStderr mixture_final;
  std::vector<double> final_weights; // mean mixture weights at t = n
  std::vector<MixtureTraceRow> trace; // first replication only
};

struct AdaptationResult {
  std::vector<std::string> expert_labels;
  std::vector<AdaptationAlphaResult> per_alpha;
};

AdaptationResult run_adaptation(const AdaptationConfig& cfg);

// ---------------------------------------------------------------------
// Convergence-rate ladders.
// ---------------------------------------------------------------------

struct KdeRateConfig {
  std::vector<long> ladder = {200, 500, 1000, 2000, 5000};
  int reps = 50;
  double c = 0.125;
  double exponent = 0.2;
  double density_mean = 0.5;
  double density_sd = 0.15;
  std::string kernel = "gaussian";
  std::uint64_t seed = 12345;
};

struct KdeRateResult {
  RiskReport report;
  double slope = 0.0;
  // Density snapshot from the last replication at the largest n.
  std::vector<double> snapshot_x;
  std::vector<double> snapshot_f;
};

KdeRateResult run_kde_rate(const KdeRateConfig& cfg);

struct LocPolyRateConfig {
  std::vector<long> ladder = {200, 500, 1000, 2000, 5000};
  int reps = 50;
  double c = 0.3;
  int degree = 1;
  double sigma2 = 0.5;
  std::string function = "f2";
  std::string kernel = "gaussian";
  std::uint64_t seed = 12345;
};

struct LocPolyRateResult {
  RiskReport report;
  double slope = 0.0;
  std::vector<double> snapshot_x;
  std::vector<double> snapshot_m;
};

LocPolyRateResult run_locpoly_rate(const LocPolyRateConfig& cfg);

// ---------------------------------------------------------------------
// Per-observation update cost: sequential rank-one updates against the
// full batch refit, at two stream lengths.
// ---------------------------------------------------------------------

struct UpdateCostConfig {
  long small_n = 100;
  long large_n = 10000;
  int window = 100;     // updates averaged per timing point
  int batch_repeats = 5;
  int degree = 2;
  double c = 1.0;
  int grid_count = 201;
  std::string kernel = "epanechnikov";
  std::string function = "f2";
  double sigma2 = 0.5;
  std::uint64_t seed = 12345;
};

struct UpdateCostResult {
  double seq_small_us = 0.0;   // mean sequential update, n near small_n
  double seq_large_us = 0.0;   // mean sequential update, n near large_n
  double batch_small_us = 0.0; // full-grid batch refit at small_n points
  double batch_large_us = 0.0; // full-grid batch refit at large_n points

  double seq_ratio() const { return seq_large_us / seq_small_us; }
  double batch_ratio() const { return batch_large_us / batch_small_us; }
};

UpdateCostResult run_update_cost(const UpdateCostConfig& cfg);

// ---------------------------------------------------------------------
// Additive-model demonstration: two smooth mean-centered components,
// recovered by sequential backfitting.
// ---------------------------------------------------------------------

struct BackfitDemoConfig {
  long n = 2000;
  double sigma2 = 0.0;
  double c = 0.25;
  double tol = 1e-6;
  int max_iter = 20;
  std::string kernel = "gaussian";
  std::uint64_t seed = 12345;
};

struct BackfitDemoResult {
  double ise_interior = 0.0;       // 2-D interior integral of squared error
  double intercept = 0.0;
  double nonconverged_fraction = 0.0;
  std::vector<double> grid_x;
  std::vector<std::vector<double>> component_values; // [component][grid]
  std::vector<std::vector<double>> component_truth;  // [component][grid]
};

// The additive truth used by the demo: (x1-0.5)^2 - 1/12 + sin(2*pi*x2),
// both components mean-zero on [0, 1].
double backfit_demo_truth(double x1, double x2);

BackfitDemoResult run_backfit_demo(const BackfitDemoConfig& cfg);

}  // namespace seqsmooth
