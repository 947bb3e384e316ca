#include "glmsel/analyze.hpp"

#include <cmath>
#include <limits>

#include "glmsel/errors.hpp"

namespace glmsel {

DatasetAnalysis analyze_dataset(const GlmFamily& family, const MatRef& design,
                                const VecRef& response, const LassoPathConfig& config) {
  DatasetAnalysis out;
  out.n = design.rows();
  out.p = design.cols();
  out.sequence = lasso_path(family, design, response, config);

  std::vector<RefitOutcome> refits = refit_candidates(family, design, response, out.sequence);
  out.candidates.reserve(refits.size());
  for (auto& entry : refits) {
    CandidateFit cand;
    cand.support = entry.fit.support;
    cand.fit = std::move(entry.fit);
    cand.rejected = entry.rejected;
    cand.reject_reason = std::move(entry.reason);
    if (!cand.rejected) {
      try {
        Mat sub = gather_columns(design, cand.support);
        cand.contrast = contrast_for_fit(family, sub, response, cand.fit);
      } catch (const NumericError& err) {
        cand.rejected = true;
        cand.reject_reason = err.what();
      }
    }
    out.candidates.push_back(std::move(cand));
  }
  return out;
}

std::vector<CriterionValue> evaluate_candidates(const CriterionKind& kind,
                                                const DatasetAnalysis& analysis) {
  std::vector<CriterionValue> values;
  values.reserve(analysis.candidates.size());
  for (const CandidateFit& cand : analysis.candidates) {
    CriterionValue v;
    v.kind = kind;
    if (cand.rejected) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      v.value = v.neg2_loglik = v.complexity_penalty = v.misspec_penalty = nan;
    } else {
      v = evaluate(kind, cand.fit, cand.contrast, analysis.n, analysis.p);
    }
    values.push_back(v);
  }
  return values;
}

SelectionResult select_model(const CriterionKind& kind, const DatasetAnalysis& analysis) {
  std::vector<CriterionValue> values = evaluate_candidates(kind, analysis);
  std::vector<FitResult> fits;
  fits.reserve(analysis.candidates.size());
  for (const CandidateFit& cand : analysis.candidates) fits.push_back(cand.fit);
  return select(values, fits);
}

}  // namespace glmsel
