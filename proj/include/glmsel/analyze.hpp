#pragma once

#include <string>
#include <vector>

#include "glmsel/contrast.hpp"
#include "glmsel/criteria.hpp"
#include "glmsel/lasso.hpp"

namespace glmsel {

// One candidate with everything the criteria need; rejected entries carry the
// reason and a non-converged fit.
struct CandidateFit {
  ModelSupport support;
  FitResult fit;
  ContrastEstimate contrast;
  bool rejected = false;
  std::string reject_reason;
};

struct DatasetAnalysis {
  Index n = 0;
  Index p = 0;
  CandidateSequence sequence;
  std::vector<CandidateFit> candidates;

  bool has_usable_candidate() const {
    for (const auto& c : candidates)
      if (!c.rejected) return true;
    return false;
  }
};

// Full candidate pipeline on one dataset: lasso path, per-support QMLE refits,
// contrast estimates. Criteria can then be evaluated repeatedly at no extra
// fitting cost.
DatasetAnalysis analyze_dataset(const GlmFamily& family, const MatRef& design,
                                const VecRef& response, const LassoPathConfig& config = {});

// Criterion values for every candidate; rejected candidates get NaN values.
std::vector<CriterionValue> evaluate_candidates(const CriterionKind& kind,
                                                const DatasetAnalysis& analysis);

// Evaluate + select in one step.
SelectionResult select_model(const CriterionKind& kind, const DatasetAnalysis& analysis);

}  // namespace glmsel
