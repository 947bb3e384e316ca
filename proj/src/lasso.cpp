#include "glmsel/lasso.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "glmsel/errors.hpp"

namespace glmsel {

namespace {

inline double soft_threshold(double u, double t) {
  if (u > t) return u - t;
  if (u < -t) return u + t;
  return 0.0;
}

std::string format_note(const char* fmt, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), fmt, a);
  return buf;
}

struct Standardized {
  Mat X;           // working design
  Vec center;      // per-column shift (zero when not centering)
  Vec scale;       // per-column divisor (one for inert columns)
  Vec col_norm2n;  // ||x_j||^2 / n of the working columns
};

Standardized standardize_design(const MatRef& Z, bool standardize, bool center) {
  const Index n = Z.rows();
  const Index p = Z.cols();
  Standardized s;
  s.X = Z;
  s.center = Vec::Zero(p);
  s.scale = Vec::Ones(p);
  if (standardize) {
    for (Index j = 0; j < p; ++j) {
      if (center) {
        s.center[j] = Z.col(j).mean();
        s.X.col(j).array() -= s.center[j];
      }
      const double sd = std::sqrt(s.X.col(j).squaredNorm() / static_cast<double>(n));
      if (sd > 0.0) {
        s.scale[j] = sd;
        s.X.col(j) /= sd;
      }
    }
  }
  s.col_norm2n.resize(p);
  for (Index j = 0; j < p; ++j) s.col_norm2n[j] = s.X.col(j).squaredNorm() / static_cast<double>(n);
  return s;
}

ModelSupport support_of(const Vec& beta) {
  std::vector<Index> idx;
  for (Index j = 0; j < beta.size(); ++j)
    if (beta[j] != 0.0) idx.push_back(j);
  return ModelSupport(std::move(idx));
}

// One cyclic pass of gaussian coordinate descent; returns max coefficient change.
double gaussian_cd_pass(const Mat& X, const Vec& col_norm2n, double lambda, Vec& beta,
                        Vec& resid, bool active_only) {
  const Index n = X.rows();
  const Index p = X.cols();
  double max_delta = 0.0;
  for (Index j = 0; j < p; ++j) {
    if (active_only && beta[j] == 0.0) continue;
    const double denom = col_norm2n[j];
    if (denom <= 0.0) continue;
    const double g = X.col(j).dot(resid) / static_cast<double>(n) + denom * beta[j];
    const double bj = soft_threshold(g, lambda) / denom;
    const double delta = bj - beta[j];
    if (delta != 0.0) {
      resid -= delta * X.col(j);
      beta[j] = bj;
      max_delta = std::max(max_delta, std::abs(delta));
    }
  }
  return max_delta;
}

double gaussian_objective(const Vec& resid, const Vec& beta, double lambda, Index n) {
  return 0.5 * resid.squaredNorm() / static_cast<double>(n) + lambda * beta.lpNorm<1>();
}

// Solves the gaussian lasso at one lambda by warm-started coordinate descent.
// Returns false when max_passes is exhausted.
bool gaussian_solve(const Mat& X, const VecRef& y, double lambda, const Vec& col_norm2n,
                    const LassoPathConfig& cfg, Vec& beta, Vec& resid, Index& passes_used,
                    std::vector<std::string>& notes) {
  const Index n = X.rows();
  double obj_prev = gaussian_objective(resid, beta, lambda, n);
  while (passes_used < cfg.max_passes) {
    // Full pass admits new coordinates, then the active set is polished.
    double delta = gaussian_cd_pass(X, col_norm2n, lambda, beta, resid, false);
    ++passes_used;
    const double obj = gaussian_objective(resid, beta, lambda, n);
    if (obj > obj_prev + 1e-10 * (1.0 + std::abs(obj_prev)))
      notes.push_back(format_note("objective increased during pass at lambda=%g", lambda));
    obj_prev = obj;
    if (delta < cfg.tol_cd) return true;
    while (passes_used < cfg.max_passes) {
      const double d_act = gaussian_cd_pass(X, col_norm2n, lambda, beta, resid, true);
      ++passes_used;
      if (d_act < cfg.tol_cd) break;
    }
  }
  return false;
}

struct LogisticState {
  double intercept = 0.0;
  Vec beta;
  Vec eta;  // intercept + X beta
};

double logistic_penalized_objective(const Vec& eta, const VecRef& y, const Vec& beta,
                                    double lambda) {
  const Index n = eta.size();
  double nll = 0.0;
  for (Index i = 0; i < n; ++i) nll += log1pexp(eta[i]) - y[i] * eta[i];
  return nll / static_cast<double>(n) + lambda * beta.lpNorm<1>();
}

// Proximal Newton with weighted coordinate descent inner loop and an
// unpenalized intercept. Returns false when the pass budget runs out.
bool logistic_solve(const Mat& X, const VecRef& y, double lambda,
                    const LassoPathConfig& cfg, LogisticState& st, Index& passes_used,
                    std::vector<std::string>& notes) {
  const Index n = X.rows();
  const Index p = X.cols();
  constexpr double kMuClamp = 1e-5;
  constexpr int kMaxOuter = 50;

  double obj_prev = logistic_penalized_objective(st.eta, y, st.beta, lambda);
  for (int outer = 0; outer < kMaxOuter; ++outer) {
    Vec mu(n), w(n), z(n);
    for (Index i = 0; i < n; ++i) {
      double m = sigmoid(st.eta[i]);
      m = std::min(std::max(m, kMuClamp), 1.0 - kMuClamp);
      mu[i] = m;
      w[i] = m * (1.0 - m);
      z[i] = st.eta[i] + (y[i] - mu[i]) / w[i];
    }
    const double w_sum = w.sum();
    Vec denom(p);
    for (Index j = 0; j < p; ++j)
      denom[j] = X.col(j).cwiseProduct(w).dot(X.col(j)) / static_cast<double>(n);

    LogisticState trial = st;
    Vec resid = z - trial.eta;  // z - intercept - X beta
    bool inner_done = false;
    while (passes_used < cfg.max_passes) {
      double max_delta = 0.0;
      {  // unpenalized intercept
        const double delta0 = w.dot(resid) / w_sum;
        if (delta0 != 0.0) {
          trial.intercept += delta0;
          resid.array() -= delta0;
          max_delta = std::abs(delta0);
        }
      }
      for (Index j = 0; j < p; ++j) {
        if (denom[j] <= 0.0) continue;
        const double g =
            X.col(j).cwiseProduct(w).dot(resid) / static_cast<double>(n) + denom[j] * trial.beta[j];
        const double bj = soft_threshold(g, lambda) / denom[j];
        const double delta = bj - trial.beta[j];
        if (delta != 0.0) {
          resid -= delta * X.col(j);
          trial.beta[j] = bj;
          max_delta = std::max(max_delta, std::abs(delta));
        }
      }
      ++passes_used;
      if (max_delta < cfg.tol_cd) {
        inner_done = true;
        break;
      }
    }
    if (!inner_done) return false;

    trial.eta = (z - resid);
    double obj = logistic_penalized_objective(trial.eta, y, trial.beta, lambda);
    // Step halving toward the previous iterate if the Newton step overshot.
    int halvings = 0;
    while (obj > obj_prev + 1e-12 && halvings < 20) {
      trial.intercept = 0.5 * (trial.intercept + st.intercept);
      trial.beta = 0.5 * (trial.beta + st.beta);
      trial.eta = 0.5 * (trial.eta + st.eta);
      obj = logistic_penalized_objective(trial.eta, y, trial.beta, lambda);
      ++halvings;
    }
    if (obj > obj_prev + 1e-12) {
      notes.push_back(format_note("no descent step at lambda=%g", lambda));
      return true;  // keep the previous iterate
    }
    const double max_change = std::max((trial.beta - st.beta).lpNorm<Eigen::Infinity>(),
                                       std::abs(trial.intercept - st.intercept));
    st = std::move(trial);
    const bool converged = max_change < cfg.tol_cd ||
                           std::abs(obj_prev - obj) <= 1e-9 * (1.0 + std::abs(obj_prev));
    obj_prev = obj;
    if (converged) return true;
  }
  return true;
}

}  // namespace

CandidateSequence lasso_path(const GlmFamily& family, const MatRef& design,
                             const VecRef& response, const LassoPathConfig& config) {
  if (config.n_lambda < 2) throw ConfigError("n_lambda must be at least 2");
  if (!(config.lambda_min_ratio > 0.0 && config.lambda_min_ratio < 1.0))
    throw ConfigError("lambda_min_ratio must be in (0, 1)");

  Dataset view{response, design, {}};
  validate_dataset(view, family.kind);

  const Index n = design.rows();
  const Index p = design.cols();
  const Index max_support = config.resolved_max_support(n);
  if (max_support > n) throw ConfigError("max_support cannot exceed n");

  CandidateSequence out;

  const double y_min = response.minCoeff();
  const double y_max = response.maxCoeff();
  if (y_min == y_max) {
    // Covers the single-class bernoulli case as well.
    out.notes.push_back("degenerate response: constant y, no candidates generated");
    return out;
  }

  const bool logistic = family.kind == Family::bernoulli_logit;
  Standardized s = standardize_design(design, config.standardize, /*center=*/logistic);

  // Gradient of the unpenalized loss at the null model fixes lambda_max.
  double lambda_max = 0.0;
  if (logistic) {
    const double ybar = response.mean();
    lambda_max = (s.X.transpose() * (response.array() - ybar).matrix()).lpNorm<Eigen::Infinity>() /
                 static_cast<double>(n);
  } else {
    lambda_max = (s.X.transpose() * response).lpNorm<Eigen::Infinity>() / static_cast<double>(n);
  }
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    out.notes.push_back("degenerate response: zero gradient at the null model");
    return out;
  }

  out.lambda_grid.resize(config.n_lambda);
  const double log_max = std::log(lambda_max);
  const double log_min = std::log(lambda_max * config.lambda_min_ratio);
  for (Index k = 0; k < config.n_lambda; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(config.n_lambda - 1);
    out.lambda_grid[k] = std::exp(log_max + t * (log_min - log_max));
  }

  Vec beta = Vec::Zero(p);
  Vec resid = response;  // gaussian residual at beta = 0
  LogisticState lstate;
  if (logistic) {
    lstate.beta = Vec::Zero(p);
    const double ybar = response.mean();
    lstate.intercept = std::log(ybar / (1.0 - ybar));
    lstate.eta = Vec::Constant(n, lstate.intercept);
  }

  std::set<std::vector<Index>> seen;
  Index passes_used = 0;
  for (Index k = 0; k < config.n_lambda; ++k) {
    const double lambda = out.lambda_grid[k];
    bool ok;
    if (logistic)
      ok = logistic_solve(s.X, response, lambda, config, lstate, passes_used, out.notes);
    else
      ok = gaussian_solve(s.X, response, lambda, s.col_norm2n, config, beta, resid,
                          passes_used, out.notes);
    if (!ok) {
      out.notes.push_back(format_note("max_passes reached, lambda=%g skipped", lambda));
      break;
    }

    ModelSupport support = support_of(logistic ? lstate.beta : beta);
    if (support.empty()) continue;
    if (support.size() > max_support) break;
    if (!seen.insert(support.indices).second) continue;

    PathSolution sol;
    sol.lambda = lambda;
    sol.beta.resize(support.size());
    double intercept = logistic ? lstate.intercept : 0.0;
    for (Index t = 0; t < support.size(); ++t) {
      const Index j = support.indices[t];
      const double b_std = logistic ? lstate.beta[j] : beta[j];
      sol.beta[t] = b_std / s.scale[j];
      intercept -= sol.beta[t] * s.center[j];
    }
    sol.intercept = intercept;
    out.path_solutions.push_back(std::move(sol));
    out.supports.push_back(std::move(support));
  }
  return out;
}

std::vector<RefitOutcome> refit_candidates(const GlmFamily& family, const MatRef& design,
                                           const VecRef& response,
                                           const CandidateSequence& seq,
                                           const FitOptions& opts) {
  std::vector<RefitOutcome> out;
  out.reserve(seq.supports.size());
  FitOptions fit_opts = opts;
  fit_opts.with_intercept = family.kind == Family::bernoulli_logit;
  for (const ModelSupport& support : seq.supports) {
    RefitOutcome entry;
    entry.fit.support = support;
    try {
      Mat sub = gather_columns(design, support);
      FitResult fit = fit_qmle(family, sub, response, fit_opts);
      fit.support = support;
      entry.fit = std::move(fit);
      if (!entry.fit.converged) {
        entry.rejected = true;
        entry.reason = entry.fit.separation_flag ? "separated fit did not converge"
                                                 : "fit did not converge";
      }
    } catch (const NumericError& err) {
      entry.rejected = true;
      entry.reason = err.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace glmsel
