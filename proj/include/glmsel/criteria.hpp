#pragma once

#include <string>
#include <vector>

#include "glmsel/contrast.hpp"
#include "glmsel/glm.hpp"

namespace glmsel {

enum class CriterionTag { aic, bic, gaic, gbic, gbic_p, hgbic_p, hgbic_p_zeta };

struct CriterionKind {
  CriterionTag tag = CriterionTag::hgbic_p;
  double zeta = 1.0;  // only meaningful for hgbic_p_zeta

  static CriterionKind aic() { return {CriterionTag::aic, 1.0}; }
  static CriterionKind bic() { return {CriterionTag::bic, 1.0}; }
  static CriterionKind gaic() { return {CriterionTag::gaic, 1.0}; }
  static CriterionKind gbic() { return {CriterionTag::gbic, 1.0}; }
  static CriterionKind gbic_p() { return {CriterionTag::gbic_p, 1.0}; }
  static CriterionKind hgbic_p() { return {CriterionTag::hgbic_p, 1.0}; }
  static CriterionKind hgbic_p_zeta(double zeta) { return {CriterionTag::hgbic_p_zeta, zeta}; }
};

std::string criterion_name(const CriterionKind& kind);

// Parses tags like "aic", "gbic_p", "hgbic_p_zeta(1.5)".
CriterionKind parse_criterion(const std::string& text);

struct CriterionValue {
  CriterionKind kind;
  double value = 0.0;
  double neg2_loglik = 0.0;
  double complexity_penalty = 0.0;
  double misspec_penalty = 0.0;
};

struct SelectionResult {
  Index chosen_index = -1;
  std::vector<CriterionValue> per_candidate;
  bool tie_break_used = false;
};

// Criterion value for one fitted candidate. d is the support size (the
// intercept, when present, is not counted). All logarithms are natural.
//   aic:          -2 ll + 2 d
//   bic:          -2 ll + d log n
//   gaic:         -2 ll + 2 tr(H)
//   gbic:         -2 ll + d log n - log|H|
//   gbic_p:       -2 ll + d log n + tr(H) - log|H|
//   hgbic_p:      -2 ll + 2 d log(p sqrt(n)) + tr(H) - log|H|
//   hgbic_p_zeta: -2 ll + zeta [2 d log(p sqrt(n)) + tr(H) - log|H|]
CriterionValue evaluate(const CriterionKind& kind, const FitResult& fit,
                        const ContrastEstimate& contrast, Index n, Index p);

// Argmin over candidates whose fit converged and whose value is finite.
// Ties break to the smaller support, then the smaller index. Throws
// NumericError when every candidate is rejected.
SelectionResult select(const std::vector<CriterionValue>& values,
                       const std::vector<FitResult>& fits);

}  // namespace glmsel
