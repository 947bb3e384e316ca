#pragma once

#include "glmsel/data.hpp"
#include "glmsel/family.hpp"
#include "glmsel/types.hpp"

namespace glmsel {

struct FitOptions {
  int max_iter = 100;
  // Score tolerance is tol_score_per_obs * n.
  double tol_score_per_obs = 1e-8;
  // Restrict iterates to ||X h beta||_inf <= linpred_cap; keeps the likelihood
  // finite under quasi-complete separation.
  double linpred_cap = 30.0;
  // Reject designs whose smallest singular value is below rank_rtol * largest.
  double rank_rtol = 1e-10;
  bool with_intercept = false;
  // Skip the SVD rank check when the caller has already screened the design.
  bool check_rank = true;
};

struct FitResult {
  ModelSupport support;
  Vec beta_hat;             // length d, support columns only
  double intercept = 0.0;   // 0 unless fitted with an intercept
  bool has_intercept = false;
  double loglik = 0.0;
  double dispersion_hat = 1.0;  // gaussian sigma^2 profile estimate; 1 otherwise
  int iterations = 0;
  bool converged = false;
  double score_sup_norm = 0.0;
  bool separation_flag = false;
};

// Quasi-log-likelihood y'Xb - 1'b(Xb) + sum_i c(y_i, tau) on the given support
// submatrix. Gaussian includes the -n/2 log(2 pi tau) - y'y/(2 tau) terms so the
// value is the full working-model log density.
double log_likelihood(const GlmFamily& family, const MatRef& design_sub,
                      const VecRef& response, const VecRef& beta, double dispersion);

// Score X'[y - mu(Xb)].
Vec score(const GlmFamily& family, const MatRef& design_sub, const VecRef& response,
          const VecRef& beta);

// Quasi-maximum-likelihood fit by damped Newton with step halving. Gaussian
// reduces to the exact least-squares solve with dispersion profiled as RSS/n.
// Throws NumericError on rank-deficient designs; iteration failures come back
// with converged=false.
FitResult fit_qmle(const GlmFamily& family, const MatRef& design_sub,
                   const VecRef& response, const FitOptions& opts = {});

// Linear predictor of a fit on the columns of the full design named by its
// support (intercept included when present).
Vec linear_predictor(const FitResult& fit, const MatRef& design);

}  // namespace glmsel
