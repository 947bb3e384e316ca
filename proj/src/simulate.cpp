#include "glmsel/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "glmsel/errors.hpp"

namespace glmsel {

namespace {

ModelSupport first_five() { return ModelSupport({0, 1, 2, 3, 4}); }

Mat sample_design(Rng& rng, Index rows, Index cols) {
  Mat X(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) X(i, j) = rng.normal();
  return X;
}

struct SupportOverlap {
  Index common = 0;
  Index extra = 0;
};

SupportOverlap overlap(const ModelSupport& selected, const ModelSupport& oracle) {
  SupportOverlap out;
  for (Index j : selected.indices)
    oracle.contains(j) ? ++out.common : ++out.extra;
  return out;
}

struct RepOutcome {
  bool failed = false;
  std::string message;
  std::vector<ReplicationMetrics> per_criterion;
  bool oracle_ok = false;
  double oracle_err = 0.0;
};

SimulatedData generate(const SimulationConfig& config, uint64_t rep) {
  const TrueModelSpec spec = TrueModelSpec::for_scenario(config.scenario, config.p);
  const uint64_t rep_seed = mix_seed(config.base_seed, rep);
  return config.scenario == Scenario::multiple_index
             ? generate_multiple_index(config.n, config.p, spec, rep_seed, config.test_size)
             : generate_logistic_interaction(config.n, config.p, spec, rep_seed,
                                             config.test_size);
}

GlmFamily family_for(Scenario scenario) {
  return scenario == Scenario::multiple_index ? GlmFamily::gaussian()
                                              : GlmFamily::bernoulli_logit();
}

// Runs fn(r) for r in [0, n_reps) on `workers` threads.
template <class Fn>
void parallel_reps(int n_reps, int workers, Fn&& fn) {
  workers = std::max(1, std::min(workers, n_reps));
  if (workers == 1) {
    for (int r = 0; r < n_reps; ++r) fn(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int r = next.fetch_add(1); r < n_reps; r = next.fetch_add(1)) fn(r);
    });
  }
  for (auto& t : pool) t.join();
}

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  int count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  double mean() const { return count > 0 ? sum / count : 0.0; }
  double se() const {
    if (count < 2) return 0.0;
    const double var = (sum_sq - sum * sum / count) / (count - 1);
    return std::sqrt(std::max(var, 0.0) / count);
  }
};

}  // namespace

std::string scenario_name(Scenario s) {
  return s == Scenario::multiple_index ? "multiple_index" : "logistic_interaction";
}

Scenario parse_scenario(const std::string& text) {
  if (text == "multiple_index") return Scenario::multiple_index;
  if (text == "logistic_interaction") return Scenario::logistic_interaction;
  throw ConfigError("unknown scenario '" + text + "'");
}

TrueModelSpec TrueModelSpec::for_scenario(Scenario scenario, Index p) {
  if (p < 5) throw ConfigError("scenario requires p >= 5");
  TrueModelSpec spec;
  spec.beta0 = Vec::Zero(p);
  if (scenario == Scenario::multiple_index) {
    spec.beta0.head(5) << 1.0, -1.0, 1.0, 1.0, -1.0;
    spec.sigma = 0.8;
  } else {
    spec.beta0.head(5) << 2.5, -1.9, 2.8, -2.2, 3.0;
    spec.sigma = 0.0;
  }
  spec.oracle_support = first_five();
  return spec;
}

RepStreams RepStreams::for_replication(uint64_t base_seed, uint64_t rep) {
  uint64_t sm = mix_seed(base_seed, rep);
  const uint64_t s1 = splitmix64(sm);
  const uint64_t s2 = splitmix64(sm);
  const uint64_t s3 = splitmix64(sm);
  const uint64_t s4 = splitmix64(sm);
  return RepStreams{Rng(s1), Rng(s2), Rng(s3), Rng(s4)};
}

double index_f(double x) { return x * x * x / (x * x + 1.0); }

double multiple_index_signal(const VecRef& row, const VecRef& beta0) {
  return index_f(beta0[0] * row[0]) + index_f(beta0[1] * row[1] + beta0[2] * row[2]) +
         index_f(beta0[3] * row[3] + beta0[4] * row[4]);
}

double logistic_theta(const VecRef& row, const VecRef& beta0) {
  return row.dot(beta0) + 2.0 * row[0] * row[1] + 2.0 * row[2] * row[3];
}

SimulatedData generate_multiple_index(Index n, Index p, const TrueModelSpec& spec,
                                      uint64_t rep_seed, Index test_size) {
  uint64_t sm = rep_seed;
  Rng train_x(splitmix64(sm));
  Rng train_y(splitmix64(sm));
  Rng test_x(splitmix64(sm));
  Rng test_y(splitmix64(sm));

  SimulatedData out;
  out.train.design = sample_design(train_x, n, p);
  out.train.response.resize(n);
  for (Index i = 0; i < n; ++i)
    out.train.response[i] =
        multiple_index_signal(out.train.design.row(i), spec.beta0) + spec.sigma * train_y.normal();

  out.test.design = sample_design(test_x, test_size, p);
  out.test.response.resize(test_size);
  for (Index i = 0; i < test_size; ++i)
    out.test.response[i] =
        multiple_index_signal(out.test.design.row(i), spec.beta0) + spec.sigma * test_y.normal();
  return out;
}

SimulatedData generate_logistic_interaction(Index n, Index p, const TrueModelSpec& spec,
                                            uint64_t rep_seed, Index test_size) {
  uint64_t sm = rep_seed;
  Rng train_x(splitmix64(sm));
  Rng train_y(splitmix64(sm));
  Rng test_x(splitmix64(sm));
  Rng test_y(splitmix64(sm));

  SimulatedData out;
  out.train.design = sample_design(train_x, n, p);
  out.train.response.resize(n);
  for (Index i = 0; i < n; ++i) {
    const double theta = logistic_theta(out.train.design.row(i), spec.beta0);
    out.train.response[i] = train_y.bernoulli(sigmoid(theta)) ? 1.0 : 0.0;
  }

  out.test.design = sample_design(test_x, test_size, p);
  out.test.response.resize(test_size);
  for (Index i = 0; i < test_size; ++i) {
    const double theta = logistic_theta(out.test.design.row(i), spec.beta0);
    out.test.response[i] = test_y.bernoulli(sigmoid(theta)) ? 1.0 : 0.0;
  }
  return out;
}

Vec estimate_pseudo_true(const GlmFamily& family, const MatRef& design_sub,
                         const VecRef& mean_response) {
  FitOptions opts;
  FitResult fit = fit_qmle(family, design_sub, mean_response, opts);
  if (!fit.converged) throw NumericError("pseudo-true solve did not converge");
  return fit.beta_hat;
}

ReplicationMetrics compute_metrics(const ModelSupport& selected, const ModelSupport& oracle,
                                   const FitResult& fit, const Dataset& test,
                                   Scenario scenario) {
  if (test.design.rows() < 1) throw DataError("test set is empty");

  ReplicationMetrics out;
  const SupportOverlap ov = overlap(selected, oracle);
  out.consistent = selected == oracle;
  out.sure = ov.common == oracle.size();
  out.false_positives = static_cast<double>(ov.extra);
  out.fdp = static_cast<double>(ov.extra) / std::max<Index>(selected.size(), 1);
  out.tpr = static_cast<double>(ov.common) / static_cast<double>(oracle.size());

  Vec eta = linear_predictor(fit, test.design);
  const Index m = test.design.rows();
  if (scenario == Scenario::multiple_index) {
    out.err = (test.response - eta).squaredNorm() / static_cast<double>(m);
  } else {
    Index wrong = 0;
    for (Index i = 0; i < m; ++i) {
      const double label = eta[i] > 0.0 ? 1.0 : 0.0;
      if (label != test.response[i]) ++wrong;
    }
    out.err = static_cast<double>(wrong) / static_cast<double>(m);
  }
  return out;
}

MetricsReport run_experiment(const SimulationConfig& config, int workers) {
  if (config.n_reps < 1) throw ConfigError("n_reps must be at least 1");
  if (config.p < 5) throw ConfigError("p must be at least 5");
  if (config.criteria.empty()) throw ConfigError("no criteria configured");
  if (config.test_size < 1) throw ConfigError("test_size must be at least 1");

  const GlmFamily family = family_for(config.scenario);
  const ModelSupport oracle = first_five();
  const Index n_crit = static_cast<Index>(config.criteria.size());

  std::vector<RepOutcome> outcomes(config.n_reps);
  parallel_reps(config.n_reps, workers, [&](int r) {
    RepOutcome& rep = outcomes[r];
    try {
      SimulatedData data = generate(config, static_cast<uint64_t>(r));
      DatasetAnalysis analysis =
          analyze_dataset(family, data.train.design, data.train.response, config.path);
      if (!analysis.has_usable_candidate()) {
        rep.failed = true;
        rep.message = "all candidates rejected";
      } else {
        rep.per_criterion.resize(n_crit);
        for (Index c = 0; c < n_crit; ++c) {
          const SelectionResult sel = select_model(config.criteria[c], analysis);
          const CandidateFit& chosen = analysis.candidates[sel.chosen_index];
          rep.per_criterion[c] =
              compute_metrics(chosen.support, oracle, chosen.fit, data.test, config.scenario);
        }
      }
      // Oracle working model: refit on the true support directly.
      try {
        FitOptions opts;
        opts.with_intercept = family.kind == Family::bernoulli_logit;
        Mat sub = gather_columns(data.train.design, oracle);
        FitResult fit = fit_qmle(family, sub, data.train.response, opts);
        fit.support = oracle;
        if (fit.converged) {
          rep.oracle_err =
              compute_metrics(oracle, oracle, fit, data.test, config.scenario).err;
          rep.oracle_ok = true;
        }
      } catch (const NumericError&) {
        rep.oracle_ok = false;
      }
    } catch (const std::exception& err) {
      rep.failed = true;
      rep.message = err.what();
    }
  });

  MetricsReport report;
  report.scenario = config.scenario;
  report.n = config.n;
  report.p = config.p;
  report.n_reps = config.n_reps;
  for (const RepOutcome& rep : outcomes) {
    if (rep.failed) {
      ++report.n_failed;
      if (report.first_failure.empty()) report.first_failure = rep.message;
    }
  }

  for (Index c = 0; c < n_crit; ++c) {
    CriterionMetrics row;
    row.criterion = criterion_name(config.criteria[c]);
    int n_consistent = 0;
    int n_sure = 0;
    Accumulator err;
    Accumulator fp;
    for (const RepOutcome& rep : outcomes) {
      if (rep.failed) continue;  // counts as neither consistent nor sure
      const ReplicationMetrics& m = rep.per_criterion[c];
      n_consistent += m.consistent ? 1 : 0;
      n_sure += m.sure ? 1 : 0;
      err.add(m.err);
      fp.add(m.false_positives);
    }
    row.consistent_pct = 100.0 * n_consistent / config.n_reps;
    row.sure_pct = 100.0 * n_sure / config.n_reps;
    row.mean_err = 100.0 * err.mean();
    row.se_err = 100.0 * err.se();
    row.mean_fp = fp.mean();
    report.rows.push_back(std::move(row));
  }

  CriterionMetrics oracle_row;
  oracle_row.criterion = "oracle";
  oracle_row.consistent_pct = 100.0;
  oracle_row.sure_pct = 100.0;
  Accumulator oracle_err;
  for (const RepOutcome& rep : outcomes)
    if (rep.oracle_ok) oracle_err.add(rep.oracle_err);
  oracle_row.mean_err = 100.0 * oracle_err.mean();
  oracle_row.se_err = 100.0 * oracle_err.se();
  oracle_row.mean_fp = 0.0;
  report.rows.push_back(std::move(oracle_row));
  return report;
}

std::vector<SweepPoint> zeta_sweep(const SimulationConfig& config, int workers) {
  if (config.zeta_grid.empty()) throw ConfigError("zeta_grid must be nonempty");
  if (config.n_reps < 1) throw ConfigError("n_reps must be at least 1");

  const GlmFamily family = family_for(config.scenario);
  const ModelSupport oracle = first_five();
  const Index n_zeta = static_cast<Index>(config.zeta_grid.size());

  struct SweepRep {
    bool failed = false;
    std::vector<double> fdp;
    std::vector<double> tpr;
  };
  std::vector<SweepRep> outcomes(config.n_reps);

  SimulationConfig gen_config = config;
  gen_config.test_size = 0;  // FDP/TPR need no test data

  parallel_reps(config.n_reps, workers, [&](int r) {
    SweepRep& rep = outcomes[r];
    try {
      SimulatedData data = generate(gen_config, static_cast<uint64_t>(r));
      DatasetAnalysis analysis =
          analyze_dataset(family, data.train.design, data.train.response, config.path);
      if (!analysis.has_usable_candidate()) {
        rep.failed = true;
        return;
      }
      rep.fdp.resize(n_zeta);
      rep.tpr.resize(n_zeta);
      for (Index z = 0; z < n_zeta; ++z) {
        const SelectionResult sel =
            select_model(CriterionKind::hgbic_p_zeta(config.zeta_grid[z]), analysis);
        const ModelSupport& selected = analysis.candidates[sel.chosen_index].support;
        const SupportOverlap ov = overlap(selected, oracle);
        rep.fdp[z] = static_cast<double>(ov.extra) / std::max<Index>(selected.size(), 1);
        rep.tpr[z] = static_cast<double>(ov.common) / static_cast<double>(oracle.size());
      }
    } catch (const std::exception&) {
      rep.failed = true;
    }
  });

  std::vector<SweepPoint> points(n_zeta);
  for (Index z = 0; z < n_zeta; ++z) {
    Accumulator fdp;
    Accumulator tpr;
    for (const SweepRep& rep : outcomes) {
      if (rep.failed) continue;
      fdp.add(rep.fdp[z]);
      tpr.add(rep.tpr[z]);
    }
    points[z] = SweepPoint{config.zeta_grid[z], fdp.mean(), tpr.mean()};
  }
  return points;
}

}  // namespace glmsel
