#include "glmsel/glm.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

#include "glmsel/errors.hpp"

namespace glmsel {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kMinDispersion = 1e-12;

void check_dims(const MatRef& X, const VecRef& y, const VecRef& beta) {
  if (y.size() != X.rows()) throw DataError("response length does not match design rows");
  if (beta.size() != X.cols()) throw DataError("coefficient length does not match design columns");
}

// Largest step t in (0, t_max] keeping ||theta + t * dtheta||_inf <= cap.
double cap_step(const Vec& theta, const Vec& dtheta, double cap, double t_max) {
  double t = t_max;
  for (Index i = 0; i < theta.size(); ++i) {
    const double d = dtheta[i];
    if (d > 0.0) t = std::min(t, (cap - theta[i]) / d);
    else if (d < 0.0) t = std::min(t, (-cap - theta[i]) / d);
  }
  return std::max(t, 0.0);
}

double bernoulli_loglik(const Vec& theta, const VecRef& y) {
  double ll = 0.0;
  for (Index i = 0; i < theta.size(); ++i) ll += y[i] * theta[i] - log1pexp(theta[i]);
  return ll;
}

FitResult fit_gaussian_ls(const Mat& X, const VecRef& y, const FitOptions& opts,
                          Index d_support) {
  const Index n = X.rows();
  FitResult out;
  Vec coef = X.colPivHouseholderQr().solve(y);
  Vec resid = y - X * coef;
  const double rss = resid.squaredNorm();
  out.dispersion_hat = std::max(rss / static_cast<double>(n), kMinDispersion);
  if (opts.with_intercept) {
    out.intercept = coef[0];
    out.beta_hat = coef.tail(d_support);
    out.has_intercept = true;
  } else {
    out.beta_hat = coef;
  }
  out.loglik = -0.5 * rss / out.dispersion_hat -
               0.5 * static_cast<double>(n) * std::log(kTwoPi * out.dispersion_hat);
  out.score_sup_norm = (X.transpose() * resid).lpNorm<Eigen::Infinity>();
  out.iterations = 1;
  out.converged = out.score_sup_norm <= opts.tol_score_per_obs * static_cast<double>(n);
  return out;
}

FitResult fit_bernoulli_newton(const Mat& X, const VecRef& y, const FitOptions& opts,
                               Index d_support) {
  const Index n = X.rows();
  const Index d = X.cols();
  const double tol = opts.tol_score_per_obs * static_cast<double>(n);

  Vec beta = Vec::Zero(d);
  Vec theta = Vec::Zero(n);
  double ll = bernoulli_loglik(theta, y);

  FitResult out;
  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    Vec mu = mean_vector(Family::bernoulli_logit, theta);
    Vec grad = X.transpose() * (y - mu);
    if (grad.lpNorm<Eigen::Infinity>() <= tol) break;
    Vec w = variance_vector(Family::bernoulli_logit, theta).cwiseMax(1e-10);
    Mat hess = X.transpose() * w.asDiagonal() * X;
    Vec step = hess.ldlt().solve(grad);
    Vec dtheta = X * step;

    double t = cap_step(theta, dtheta, opts.linpred_cap, 1.0);
    if (t <= 1e-14) break;  // cap is binding and no admissible step remains
    bool accepted = false;
    for (int half = 0; half < 40; ++half) {
      Vec theta_try = theta + t * dtheta;
      const double ll_try = bernoulli_loglik(theta_try, y);
      if (ll_try >= ll) {
        beta += t * step;
        theta = std::move(theta_try);
        ll = ll_try;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // stalled; score norm already recorded
  }

  Vec mu = mean_vector(Family::bernoulli_logit, theta);
  out.score_sup_norm = (X.transpose() * (y - mu)).lpNorm<Eigen::Infinity>();
  out.iterations = iter;
  out.converged = out.score_sup_norm <= tol;
  out.separation_flag = theta.lpNorm<Eigen::Infinity>() >= opts.linpred_cap - 1e-6;
  out.loglik = ll;
  out.dispersion_hat = 1.0;
  if (opts.with_intercept) {
    out.intercept = beta[0];
    out.beta_hat = beta.tail(d_support);
    out.has_intercept = true;
  } else {
    out.beta_hat = beta;
  }
  return out;
}

}  // namespace

double log_likelihood(const GlmFamily& family, const MatRef& design_sub,
                      const VecRef& response, const VecRef& beta, double dispersion) {
  check_dims(design_sub, response, beta);
  if (!(dispersion > 0.0)) throw DataError("dispersion must be positive");
  if (!design_sub.allFinite() || !response.allFinite() || !beta.allFinite())
    throw DataError("log_likelihood inputs must be finite");

  const Index n = design_sub.rows();
  Vec theta = design_sub * beta;
  if (family.kind == Family::gaussian) {
    const double tau = dispersion;
    return (response.dot(theta) - 0.5 * theta.squaredNorm()) / tau -
           0.5 * static_cast<double>(n) * std::log(kTwoPi * tau) -
           response.squaredNorm() / (2.0 * tau);
  }
  return bernoulli_loglik(theta, response);
}

Vec score(const GlmFamily& family, const MatRef& design_sub, const VecRef& response,
          const VecRef& beta) {
  check_dims(design_sub, response, beta);
  Vec theta = design_sub * beta;
  return design_sub.transpose() * (response - mean_vector(family.kind, theta));
}

FitResult fit_qmle(const GlmFamily& family, const MatRef& design_sub,
                   const VecRef& response, const FitOptions& opts) {
  if (response.size() != design_sub.rows())
    throw DataError("response length does not match design rows");
  if (!design_sub.allFinite() || !response.allFinite())
    throw DataError("fit_qmle inputs must be finite");

  const Index d_support = design_sub.cols();
  Mat X;
  if (opts.with_intercept) {
    X.resize(design_sub.rows(), d_support + 1);
    X.col(0).setOnes();
    X.rightCols(d_support) = design_sub;
  } else {
    X = design_sub;
  }

  if (X.cols() > X.rows()) throw NumericError("more coefficients than observations");
  if (opts.check_rank) {
    Eigen::JacobiSVD<Mat> svd(X);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv[sv.size() - 1] <= opts.rank_rtol * sv[0])
      throw NumericError("design submatrix is rank deficient");
  }

  FitResult out = family.kind == Family::gaussian
                      ? fit_gaussian_ls(X, response, opts, d_support)
                      : fit_bernoulli_newton(X, response, opts, d_support);
  return out;
}

Vec linear_predictor(const FitResult& fit, const MatRef& design) {
  Vec eta = Vec::Constant(design.rows(), fit.intercept);
  for (Index k = 0; k < fit.support.size(); ++k)
    eta += design.col(fit.support.indices[k]) * fit.beta_hat[k];
  return eta;
}

}  // namespace glmsel
