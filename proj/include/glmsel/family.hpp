#pragma once

#include <cmath>
#include <string>

#include "glmsel/errors.hpp"
#include "glmsel/types.hpp"

namespace glmsel {

enum class Family { gaussian, bernoulli_logit };

// Working-model family with canonical link. The cumulant b and its first two
// derivatives determine the quasi-likelihood; dispersion is the exponential-family
// scale (sigma^2 for gaussian, fixed at 1 for bernoulli_logit).
struct GlmFamily {
  Family kind = Family::gaussian;
  double dispersion = 1.0;

  static GlmFamily gaussian(double dispersion = 1.0) {
    if (!(dispersion > 0.0)) throw DataError("gaussian dispersion must be positive");
    return GlmFamily{Family::gaussian, dispersion};
  }
  static GlmFamily bernoulli_logit() { return GlmFamily{Family::bernoulli_logit, 1.0}; }
};

inline std::string family_name(Family f) {
  return f == Family::gaussian ? "gaussian" : "bernoulli_logit";
}

// log(1 + e^t) without overflow.
inline double log1pexp(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

inline double sigmoid(double t) {
  return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
}

// Cumulant b(theta).
inline double cumulant(Family f, double theta) {
  return f == Family::gaussian ? 0.5 * theta * theta : log1pexp(theta);
}

// Mean function b'(theta).
inline double mean_value(Family f, double theta) {
  return f == Family::gaussian ? theta : sigmoid(theta);
}

// Variance function b''(theta); strictly positive for all finite theta.
inline double variance_value(Family f, double theta) {
  if (f == Family::gaussian) return 1.0;
  const double mu = sigmoid(theta);
  return mu * (1.0 - mu);
}

template <class Derived>
Vec mean_vector(Family f, const Eigen::MatrixBase<Derived>& theta) {
  if (f == Family::gaussian) return theta;
  return theta.derived().unaryExpr([](double t) { return sigmoid(t); });
}

template <class Derived>
Vec variance_vector(Family f, const Eigen::MatrixBase<Derived>& theta) {
  if (f == Family::gaussian) return Vec::Ones(theta.size());
  return theta.derived().unaryExpr([](double t) { return variance_value(Family::bernoulli_logit, t); });
}

template <class Derived>
Vec cumulant_vector(Family f, const Eigen::MatrixBase<Derived>& theta) {
  if (f == Family::gaussian) return 0.5 * theta.derived().array().square();
  return theta.derived().unaryExpr([](double t) { return log1pexp(t); });
}

}  // namespace glmsel
