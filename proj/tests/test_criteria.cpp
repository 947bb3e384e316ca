#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "glmsel/criteria.hpp"

using namespace glmsel;

namespace {

FitResult make_fit(double loglik, Index d) {
  FitResult fit;
  fit.beta_hat = Vec::Zero(d);
  fit.loglik = loglik;
  fit.converged = true;
  return fit;
}

ContrastEstimate make_contrast(double trace, double logdet) {
  ContrastEstimate c;
  c.trace_h = trace;
  c.logdet_h = logdet;
  return c;
}

CriterionValue make_value(double v) {
  CriterionValue out;
  out.value = v;
  return out;
}

}  // namespace

TEST_CASE("hgbic_p by direct substitution") {
  FitResult fit = make_fit(-100.0, 5);
  ContrastEstimate c = make_contrast(5.0, 0.0);
  CriterionValue v = evaluate(CriterionKind::hgbic_p(), fit, c, 200, 100);
  const double expected = 200.0 + 10.0 * std::log(100.0 * std::sqrt(200.0)) + 5.0;
  CHECK(v.value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(v.value == doctest::Approx(277.5433).epsilon(1e-6));
}

TEST_CASE("aic with zero log-likelihood is twice the dimension") {
  CriterionValue v =
      evaluate(CriterionKind::aic(), make_fit(0.0, 3), make_contrast(3.0, 0.0), 50, 10);
  CHECK(v.value == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(v.misspec_penalty == 0.0);
}

TEST_CASE("all criterion formulas decompose as stated") {
  const double ll = -37.25;
  const Index n = 120;
  const Index p = 40;
  FitResult fit = make_fit(ll, 4);
  ContrastEstimate c = make_contrast(5.5, 0.75);
  const double log_n = std::log(120.0);
  const double log_pstar = std::log(40.0 * std::sqrt(120.0));

  auto check = [&](CriterionKind kind, double complexity, double misspec) {
    CriterionValue v = evaluate(kind, fit, c, n, p);
    CHECK(v.neg2_loglik == doctest::Approx(-2.0 * ll).epsilon(1e-14));
    CHECK(v.complexity_penalty == doctest::Approx(complexity).epsilon(1e-12));
    CHECK(v.misspec_penalty == doctest::Approx(misspec).scale(1.0).epsilon(1e-12));
    CHECK(v.value ==
          doctest::Approx(v.neg2_loglik + v.complexity_penalty + v.misspec_penalty)
              .epsilon(1e-14));
  };
  check(CriterionKind::aic(), 8.0, 0.0);
  check(CriterionKind::bic(), 4.0 * log_n, 0.0);
  check(CriterionKind::gaic(), 0.0, 11.0);
  check(CriterionKind::gbic(), 4.0 * log_n, -0.75);
  check(CriterionKind::gbic_p(), 4.0 * log_n, 5.5 - 0.75);
  check(CriterionKind::hgbic_p(), 8.0 * log_pstar, 5.5 - 0.75);
  check(CriterionKind::hgbic_p_zeta(2.0), 16.0 * log_pstar, 2.0 * (5.5 - 0.75));
}

TEST_CASE("zeta one reproduces hgbic_p bitwise") {
  FitResult fit = make_fit(-64.125, 7);
  ContrastEstimate c = make_contrast(7.875, -0.375);
  CriterionValue a = evaluate(CriterionKind::hgbic_p(), fit, c, 300, 800);
  CriterionValue b = evaluate(CriterionKind::hgbic_p_zeta(1.0), fit, c, 300, 800);
  CHECK(a.value == b.value);
  CHECK(a.complexity_penalty == b.complexity_penalty);
  CHECK(a.misspec_penalty == b.misspec_penalty);
}

TEST_CASE("hgbic_p penalizes complexity more than bic when p >= n") {
  for (const auto& [n, p] : {std::pair<Index, Index>{2, 2}, {50, 50}, {100, 400}}) {
    for (Index d : {1, 3, 10}) {
      FitResult fit = make_fit(0.0, d);
      ContrastEstimate c = make_contrast(static_cast<double>(d), 0.0);
      const double hg = evaluate(CriterionKind::hgbic_p(), fit, c, n, p).complexity_penalty;
      const double bc = evaluate(CriterionKind::bic(), fit, c, n, p).complexity_penalty;
      CHECK(hg > bc);
    }
  }
}

TEST_CASE("evaluate validates its inputs") {
  FitResult fit = make_fit(0.0, 2);
  ContrastEstimate c = make_contrast(2.0, 0.0);
  CHECK_THROWS_AS(evaluate(CriterionKind::aic(), fit, c, 1, 10), DataError);
  CHECK_THROWS_AS(evaluate(CriterionKind::aic(), fit, c, 10, 0), DataError);
  ContrastEstimate bad = make_contrast(std::nan(""), 0.0);
  CHECK_THROWS_AS(evaluate(CriterionKind::aic(), fit, bad, 10, 10), NumericError);
}

TEST_CASE("selection picks the argmin") {
  std::vector<CriterionValue> values = {make_value(10.0), make_value(9.0), make_value(11.0)};
  std::vector<FitResult> fits = {make_fit(0, 1), make_fit(0, 2), make_fit(0, 3)};
  SelectionResult sel = select(values, fits);
  CHECK(sel.chosen_index == 1);
  CHECK_FALSE(sel.tie_break_used);
}

TEST_CASE("ties go to the smaller support") {
  std::vector<CriterionValue> values = {make_value(9.0), make_value(9.0)};
  std::vector<FitResult> fits = {make_fit(0, 3), make_fit(0, 2)};
  SelectionResult sel = select(values, fits);
  CHECK(sel.chosen_index == 1);
  CHECK(sel.tie_break_used);
}

TEST_CASE("a single candidate is chosen") {
  std::vector<CriterionValue> values = {make_value(4.0)};
  std::vector<FitResult> fits = {make_fit(0, 2)};
  CHECK(select(values, fits).chosen_index == 0);
}

TEST_CASE("rejected candidates are skipped; all rejected is an error") {
  std::vector<CriterionValue> values = {make_value(1.0), make_value(5.0)};
  std::vector<FitResult> fits = {make_fit(0, 1), make_fit(0, 2)};
  fits[0].converged = false;
  CHECK(select(values, fits).chosen_index == 1);

  fits[1].converged = false;
  CHECK_THROWS_AS(select(values, fits), NumericError);
}

TEST_CASE("shifting every log-likelihood by a constant keeps the argmin") {
  const Index n = 90;
  const Index p = 30;
  std::vector<double> logliks = {-50.0, -44.0, -41.5, -40.9};
  std::vector<Index> dims = {2, 3, 5, 8};
  for (const CriterionKind kind :
       {CriterionKind::aic(), CriterionKind::gbic_p(), CriterionKind::hgbic_p()}) {
    std::vector<CriterionValue> base, shifted;
    std::vector<FitResult> fits;
    for (size_t i = 0; i < logliks.size(); ++i) {
      ContrastEstimate c = make_contrast(static_cast<double>(dims[i]) + 0.3, -0.2);
      base.push_back(evaluate(kind, make_fit(logliks[i], dims[i]), c, n, p));
      shifted.push_back(evaluate(kind, make_fit(logliks[i] + 123.456, dims[i]), c, n, p));
      fits.push_back(make_fit(logliks[i], dims[i]));
    }
    CHECK(select(base, fits).chosen_index == select(shifted, fits).chosen_index);
  }
}
