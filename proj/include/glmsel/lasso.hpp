#pragma once

#include <string>
#include <vector>

#include "glmsel/data.hpp"
#include "glmsel/glm.hpp"
#include "glmsel/types.hpp"

namespace glmsel {

struct LassoPathConfig {
  Index n_lambda = 100;
  double lambda_min_ratio = 1e-3;
  Index max_support = -1;  // auto: min(n/2, 50)
  double tol_cd = 1e-7;
  Index max_passes = 1000;
  bool standardize = true;

  Index resolved_max_support(Index n) const {
    return max_support >= 0 ? max_support : std::min<Index>(n / 2, 50);
  }
};

// Penalized solution at the lambda where a support first appeared, mapped back
// to the original column scale and restricted to the support.
struct PathSolution {
  double lambda = 0.0;
  double intercept = 0.0;
  Vec beta;  // aligned with the support indices
};

struct CandidateSequence {
  std::vector<ModelSupport> supports;  // deduplicated, first appearance along decreasing lambda
  Vec lambda_grid;
  std::vector<PathSolution> path_solutions;  // aligned with supports
  std::vector<std::string> notes;            // skipped lambdas, degenerate inputs
};

// Cyclic coordinate descent over a log-spaced lambda grid with warm starts.
// Gaussian uses exact soft-threshold updates without an intercept; bernoulli_logit
// wraps the weighted inner loop in a proximal Newton outer loop with an
// unpenalized intercept. Supports are collected, deduplicated, and the path
// stops once a support exceeds max_support.
CandidateSequence lasso_path(const GlmFamily& family, const MatRef& design,
                             const VecRef& response, const LassoPathConfig& config = {});

struct RefitOutcome {
  FitResult fit;
  bool rejected = false;
  std::string reason;
};

// Unpenalized QMLE refit of every support in the sequence, in order. Failures
// (rank deficiency, non-convergence) come back as rejected entries.
std::vector<RefitOutcome> refit_candidates(const GlmFamily& family, const MatRef& design,
                                           const VecRef& response,
                                           const CandidateSequence& seq,
                                           const FitOptions& opts = {});

}  // namespace glmsel
