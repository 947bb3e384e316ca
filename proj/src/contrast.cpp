#include "glmsel/contrast.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "glmsel/errors.hpp"

namespace glmsel {

namespace {

void check_dims(const MatRef& X, const VecRef& beta) {
  if (beta.size() != X.cols()) throw DataError("coefficient length does not match design columns");
  if (!beta.allFinite()) throw DataError("coefficients must be finite");
}

}  // namespace

Mat estimate_A(const GlmFamily& family, const MatRef& design_sub, const VecRef& beta_hat,
               double dispersion) {
  check_dims(design_sub, beta_hat);
  Vec theta = design_sub * beta_hat;
  Vec w = variance_vector(family.kind, theta);
  Mat a = design_sub.transpose() * w.asDiagonal() * design_sub;
  if (family.kind == Family::gaussian) a /= dispersion;
  return a;
}

Mat estimate_B(const GlmFamily& family, const MatRef& design_sub, const VecRef& response,
               const VecRef& beta_hat, double dispersion) {
  check_dims(design_sub, beta_hat);
  if (response.size() != design_sub.rows())
    throw DataError("response length does not match design rows");
  Vec theta = design_sub * beta_hat;
  Vec r = response - mean_vector(family.kind, theta);
  Vec r2 = r.array().square();
  Mat b = design_sub.transpose() * r2.asDiagonal() * design_sub;
  if (family.kind == Family::gaussian) b /= dispersion * dispersion;
  return b;
}

ContrastEstimate contrast_summary(const MatRef& a_hat, const MatRef& b_hat,
                                  double eig_floor) {
  if (a_hat.rows() != a_hat.cols() || b_hat.rows() != b_hat.cols() ||
      a_hat.rows() != b_hat.rows())
    throw DataError("contrast matrices must be square with matching sizes");
  if (!(eig_floor > 0.0)) throw DataError("eig_floor must be positive");

  Eigen::LLT<Mat> llt(a_hat);
  if (llt.info() != Eigen::Success)
    throw NumericError("A_hat is not positive definite");

  // Generalized problem B v = lambda A v; lambda are the eigenvalues of A^{-1}B.
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> solver(b_hat, a_hat,
                                                       Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success)
    throw NumericError("generalized eigensolve failed");

  ContrastEstimate out;
  out.a_hat = a_hat;
  out.b_hat = b_hat;
  const Vec& eig = solver.eigenvalues();
  out.min_eig_h = eig.minCoeff();
  out.trace_h = eig.sum();
  out.logdet_h = 0.0;
  out.clamped = false;
  for (Index i = 0; i < eig.size(); ++i) {
    double lam = eig[i];
    if (lam < eig_floor) {
      lam = eig_floor;
      out.clamped = true;
    }
    out.logdet_h += std::log(lam);
  }
  return out;
}

ContrastEstimate contrast_for_fit(const GlmFamily& family, const MatRef& design_sub,
                                  const VecRef& response, const FitResult& fit,
                                  double eig_floor) {
  Mat X;
  Vec coef;
  if (fit.has_intercept) {
    X.resize(design_sub.rows(), design_sub.cols() + 1);
    X.col(0).setOnes();
    X.rightCols(design_sub.cols()) = design_sub;
    coef.resize(fit.beta_hat.size() + 1);
    coef[0] = fit.intercept;
    coef.tail(fit.beta_hat.size()) = fit.beta_hat;
  } else {
    X = design_sub;
    coef = fit.beta_hat;
  }
  Mat a = estimate_A(family, X, coef, fit.dispersion_hat);
  Mat b = estimate_B(family, X, response, coef, fit.dispersion_hat);
  return contrast_summary(a, b, eig_floor);
}

}  // namespace glmsel
