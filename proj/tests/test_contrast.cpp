#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "glmsel/contrast.hpp"
#include "glmsel/rng.hpp"

using namespace glmsel;

namespace {

Mat random_design(Rng& rng, Index n, Index d) {
  Mat X(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) X(i, j) = rng.normal();
  return X;
}

Mat random_spd(Rng& rng, Index d) {
  Mat M = random_design(rng, d + 3, d);
  return M.transpose() * M + 0.1 * Mat::Identity(d, d);
}

}  // namespace

TEST_CASE("A estimate at beta zero is a quarter of X'X for the logit family") {
  Rng rng(3);
  Mat X = random_design(rng, 20, 3);
  Vec beta = Vec::Zero(3);
  Mat a = estimate_A(GlmFamily::bernoulli_logit(), X, beta, 1.0);
  Mat expected = 0.25 * X.transpose() * X;
  CHECK((a - expected).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("gaussian A estimate is X'X over the dispersion") {
  Rng rng(5);
  Mat X = random_design(rng, 15, 2);
  Vec beta(2);
  beta << 0.7, -0.4;
  Mat a1 = estimate_A(GlmFamily::gaussian(), X, beta, 1.0);
  CHECK((a1 - X.transpose() * X).lpNorm<Eigen::Infinity>() < 1e-12);

  Mat ones(2, 1);
  ones << 1.0, 1.0;
  Vec b1(1);
  b1 << 0.0;
  Mat a2 = estimate_A(GlmFamily::gaussian(), ones, b1, 2.0);
  CHECK(a2(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("B estimate vanishes on a perfect fit") {
  Mat X(3, 1);
  X << 1.0, 2.0, -1.0;
  Vec y = 0.5 * X.col(0);
  Vec beta(1);
  beta << 0.5;
  Mat b = estimate_B(GlmFamily::gaussian(), X, y, beta, 1.0);
  CHECK(b.lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("B estimate sums squared residuals for the ones design") {
  Mat X(2, 1);
  X << 1.0, 1.0;
  Vec y(2), beta(1);
  y << 1.0, -1.0;
  beta << 0.0;  // residuals are (1, -1)
  Mat b = estimate_B(GlmFamily::gaussian(), X, y, beta, 1.0);
  CHECK(b(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("B estimate matches the elementwise double loop") {
  Rng rng(9);
  Mat X = random_design(rng, 12, 3);
  Vec y(12), beta(3);
  for (Index i = 0; i < 12; ++i) y[i] = rng.bernoulli(0.5) ? 1.0 : 0.0;
  beta << 0.3, -0.8, 0.5;

  const GlmFamily family = GlmFamily::bernoulli_logit();
  Mat b = estimate_B(family, X, y, beta, 1.0);

  // Independent oracle: sum_i x_i x_i' r_i^2 accumulated entry by entry.
  Mat oracle = Mat::Zero(3, 3);
  for (Index i = 0; i < 12; ++i) {
    const double r = y[i] - sigmoid(X.row(i).dot(beta));
    for (Index a = 0; a < 3; ++a)
      for (Index c = 0; c < 3; ++c) oracle(a, c) += X(i, a) * X(i, c) * r * r;
  }
  CHECK((b - oracle).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("contrast summary on simple matrix pairs") {
  Mat a2 = 2.0 * Mat::Identity(2, 2);
  ContrastEstimate c1 = contrast_summary(a2, a2);
  CHECK(c1.trace_h == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c1.logdet_h == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK_FALSE(c1.clamped);

  Mat i2 = Mat::Identity(2, 2);
  Mat b2 = Mat::Zero(2, 2);
  b2(0, 0) = 2.0;
  b2(1, 1) = 0.5;
  ContrastEstimate c2 = contrast_summary(i2, b2);
  CHECK(c2.trace_h == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(c2.logdet_h == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  Mat i1 = Mat::Identity(1, 1);
  Mat zero1 = Mat::Zero(1, 1);
  ContrastEstimate c3 = contrast_summary(i1, zero1, 1e-8);
  CHECK(c3.trace_h == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(c3.logdet_h == doctest::Approx(std::log(1e-8)).epsilon(1e-12));
  CHECK(c3.clamped);
}

TEST_CASE("contrast summary rejects indefinite A") {
  Mat a = Mat::Identity(2, 2);
  a(1, 1) = -1.0;
  CHECK_THROWS_AS(contrast_summary(a, Mat::Identity(2, 2)), NumericError);
}

TEST_CASE("generalized eigenvalues match the nonsymmetric product") {
  Rng rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const Index d = 2 + static_cast<Index>(rng.uniform() * 9.0);
    Mat a = random_spd(rng, d);
    Mat b = random_spd(rng, d);
    ContrastEstimate c = contrast_summary(a, b);

    Eigen::EigenSolver<Mat> direct(a.ldlt().solve(b));
    Vec direct_eigs = direct.eigenvalues().real();
    std::sort(direct_eigs.begin(), direct_eigs.end());
    CHECK(c.trace_h == doctest::Approx(direct_eigs.sum()).epsilon(1e-8));
    CHECK(c.min_eig_h == doctest::Approx(direct_eigs[0]).epsilon(1e-8));
  }
}

TEST_CASE("unit squared residuals give the identity contrast exactly") {
  Rng rng(17);
  Mat X = random_design(rng, 30, 4);
  Vec beta(4);
  beta << 0.2, -0.1, 0.4, 0.05;
  // Scale residuals to +-1: y = X beta + s with s_i in {-1, 1}.
  Vec y = X * beta;
  for (Index i = 0; i < 30; ++i) y[i] += rng.bernoulli(0.5) ? 1.0 : -1.0;

  const GlmFamily family = GlmFamily::gaussian();
  Mat a = estimate_A(family, X, beta, 1.0);
  Mat b = estimate_B(family, X, y, beta, 1.0);
  CHECK((a - b).lpNorm<Eigen::Infinity>() < 1e-10);

  ContrastEstimate c = contrast_summary(a, b);
  CHECK(std::abs(c.trace_h - c.logdet_h - 4.0) < 1e-10);
  CHECK_FALSE(c.clamped);
}

TEST_CASE("trace minus log-determinant is at least the dimension") {
  Rng rng(21);
  for (int rep = 0; rep < 25; ++rep) {
    const Index d = 1 + static_cast<Index>(rng.uniform() * 8.0);
    ContrastEstimate c = contrast_summary(random_spd(rng, d), random_spd(rng, d));
    if (c.clamped) continue;
    CHECK(c.trace_h - c.logdet_h >= static_cast<double>(d) - 1e-10);
  }
}

TEST_CASE("trace of the contrast concentrates at d as n grows") {
  // Correctly specified logistic model, d = 3; reduced version of the
  // acceptance-scale check.
  Vec beta_star(3);
  beta_star << 1.0, -0.8, 0.6;
  const GlmFamily family = GlmFamily::bernoulli_logit();

  double prev_gap = -1.0;
  for (const Index n : {400, 3200}) {
    double gap_sum = 0.0;
    const int reps = 20;
    for (int rep = 0; rep < reps; ++rep) {
      Rng rng(mix_seed(777, static_cast<uint64_t>(n * 1000 + rep)));
      Mat X = random_design(rng, n, 3);
      Vec y(n);
      for (Index i = 0; i < n; ++i)
        y[i] = rng.bernoulli(sigmoid(X.row(i).dot(beta_star))) ? 1.0 : 0.0;
      FitResult fit = fit_qmle(family, X, y);
      REQUIRE(fit.converged);
      Mat a = estimate_A(family, X, fit.beta_hat, 1.0);
      Mat b = estimate_B(family, X, y, fit.beta_hat, 1.0);
      gap_sum += std::abs(contrast_summary(a, b).trace_h - 3.0);
    }
    const double gap = gap_sum / reps;
    if (prev_gap >= 0.0) CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}
