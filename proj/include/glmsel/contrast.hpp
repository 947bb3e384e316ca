#pragma once

#include "glmsel/glm.hpp"
#include "glmsel/types.hpp"

namespace glmsel {

constexpr double kDefaultEigFloor = 1e-8;

// Plug-in covariance contrast summary: eigenvalues of A_hat^{-1} B_hat, their
// sum and floored log product. clamped marks eigenvalues pushed up to eig_floor.
struct ContrastEstimate {
  Mat a_hat;
  Mat b_hat;
  double trace_h = 0.0;
  double logdet_h = 0.0;
  double min_eig_h = 0.0;
  bool clamped = false;
};

// X' Sigma(X beta) X, divided by the dispersion for the gaussian family so that
// the gaussian case is X'X / sigma^2.
Mat estimate_A(const GlmFamily& family, const MatRef& design_sub, const VecRef& beta_hat,
               double dispersion);

// X' diag(r o r) X with r = y - mu(X beta), divided by dispersion^2 for the
// gaussian family.
Mat estimate_B(const GlmFamily& family, const MatRef& design_sub, const VecRef& response,
               const VecRef& beta_hat, double dispersion);

// Eigenvalues of A^{-1}B via the symmetric generalized eigenproblem B v = lambda A v.
// Throws NumericError when a_hat is not positive definite.
ContrastEstimate contrast_summary(const MatRef& a_hat, const MatRef& b_hat,
                                  double eig_floor = kDefaultEigFloor);

// Contrast for a finished fit, evaluated on the design matrix actually fitted
// (intercept column included when the fit has one).
ContrastEstimate contrast_for_fit(const GlmFamily& family, const MatRef& design_sub,
                                  const VecRef& response, const FitResult& fit,
                                  double eig_floor = kDefaultEigFloor);

}  // namespace glmsel
