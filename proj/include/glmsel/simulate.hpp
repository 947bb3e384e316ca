#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glmsel/analyze.hpp"
#include "glmsel/data.hpp"
#include "glmsel/rng.hpp"

namespace glmsel {

enum class Scenario { multiple_index, logistic_interaction };

std::string scenario_name(Scenario s);
Scenario parse_scenario(const std::string& text);

// Generating model: nonzero coefficient block, noise level, and the oracle
// support (the first five columns).
struct TrueModelSpec {
  Vec beta0;
  double sigma = 0.8;
  ModelSupport oracle_support;

  static TrueModelSpec for_scenario(Scenario scenario, Index p);
};

struct SimulationConfig {
  Scenario scenario = Scenario::multiple_index;
  Index n = 200;
  Index p = 100;
  int n_reps = 100;
  uint64_t base_seed = 1;
  std::vector<CriterionKind> criteria;
  std::vector<double> zeta_grid;
  Index test_size = 10000;
  LassoPathConfig path;
};

// All sampling for one replication comes from four independent substreams so
// that train and test generation can be reordered freely.
struct RepStreams {
  Rng train_x;
  Rng train_y;
  Rng test_x;
  Rng test_y;

  static RepStreams for_replication(uint64_t base_seed, uint64_t rep);
};

struct SimulatedData {
  Dataset train;
  Dataset test;
};

// x^3 / (x^2 + 1), the index-model link.
double index_f(double x);

// Noiseless response of the multiple index model at one design row.
double multiple_index_signal(const VecRef& row, const VecRef& beta0);

// True natural parameter of the logistic-with-interaction model at one row.
double logistic_theta(const VecRef& row, const VecRef& beta0);

// Design rows iid N(0, I_p); response from the multiple index model with
// N(0, sigma^2) noise. The test set is drawn the same way.
SimulatedData generate_multiple_index(Index n, Index p, const TrueModelSpec& spec,
                                      uint64_t rep_seed, Index test_size);

// Bernoulli responses with the interaction terms included in the true natural
// parameter; the fitted design excludes them.
SimulatedData generate_logistic_interaction(Index n, Index p, const TrueModelSpec& spec,
                                            uint64_t rep_seed, Index test_size);

// Solves X'[EY - mu(X beta)] = 0 with the mean response in place of y; the
// population version of the score equation.
Vec estimate_pseudo_true(const GlmFamily& family, const MatRef& design_sub,
                         const VecRef& mean_response);

struct ReplicationMetrics {
  bool consistent = false;
  bool sure = false;
  double false_positives = 0.0;
  double fdp = 0.0;
  double tpr = 0.0;
  double err = 0.0;  // squared prediction error or misclassification rate
};

ReplicationMetrics compute_metrics(const ModelSupport& selected, const ModelSupport& oracle,
                                   const FitResult& fit, const Dataset& test,
                                   Scenario scenario);

// Aggregated rows as emitted to CSV: rates in percent, errors multiplied by
// 100 to match the usual table convention, false positives as raw counts.
struct CriterionMetrics {
  std::string criterion;
  double consistent_pct = 0.0;
  double sure_pct = 0.0;
  double mean_err = 0.0;
  double se_err = 0.0;
  double mean_fp = 0.0;
};

struct MetricsReport {
  Scenario scenario = Scenario::multiple_index;
  Index n = 0;
  Index p = 0;
  int n_reps = 0;
  int n_failed = 0;
  std::string first_failure;
  std::vector<CriterionMetrics> rows;  // configured criteria, then the oracle row
};

struct SweepPoint {
  double zeta = 0.0;
  double mean_fdp = 0.0;
  double mean_tpr = 0.0;
};

// Replicated selection experiment over every configured criterion. Replications
// run on `workers` threads; aggregation is ordered by replication index, so the
// report is identical for any worker count.
MetricsReport run_experiment(const SimulationConfig& config, int workers = 1);

// FDP/TPR of the hgbic_p_zeta family over config.zeta_grid, reusing each
// replication's candidate fits across zeta values.
std::vector<SweepPoint> zeta_sweep(const SimulationConfig& config, int workers = 1);

}  // namespace glmsel
