#include "glmsel/criteria.hpp"

#include <cmath>
#include <cstdio>

#include "glmsel/errors.hpp"

namespace glmsel {

std::string criterion_name(const CriterionKind& kind) {
  switch (kind.tag) {
    case CriterionTag::aic: return "aic";
    case CriterionTag::bic: return "bic";
    case CriterionTag::gaic: return "gaic";
    case CriterionTag::gbic: return "gbic";
    case CriterionTag::gbic_p: return "gbic_p";
    case CriterionTag::hgbic_p: return "hgbic_p";
    case CriterionTag::hgbic_p_zeta: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "hgbic_p_zeta(%g)", kind.zeta);
      return buf;
    }
  }
  return "unknown";
}

CriterionKind parse_criterion(const std::string& text) {
  if (text == "aic") return CriterionKind::aic();
  if (text == "bic") return CriterionKind::bic();
  if (text == "gaic") return CriterionKind::gaic();
  if (text == "gbic") return CriterionKind::gbic();
  if (text == "gbic_p") return CriterionKind::gbic_p();
  if (text == "hgbic_p") return CriterionKind::hgbic_p();
  const std::string prefix = "hgbic_p_zeta(";
  if (text.rfind(prefix, 0) == 0 && text.back() == ')') {
    const std::string num = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    char* end = nullptr;
    const double zeta = std::strtod(num.c_str(), &end);
    if (end != num.c_str() + num.size() || !(zeta > 0.0))
      throw ConfigError("invalid zeta in criterion '" + text + "'");
    return CriterionKind::hgbic_p_zeta(zeta);
  }
  throw ConfigError("unknown criterion '" + text + "'");
}

CriterionValue evaluate(const CriterionKind& kind, const FitResult& fit,
                        const ContrastEstimate& contrast, Index n, Index p) {
  if (n < 2 || p < 1) throw DataError("criterion requires n >= 2 and p >= 1");
  if (!std::isfinite(fit.loglik)) throw NumericError("non-finite log-likelihood");
  if (!std::isfinite(contrast.trace_h) || !std::isfinite(contrast.logdet_h))
    throw NumericError("non-finite contrast summary");
  if (kind.tag == CriterionTag::hgbic_p_zeta && !(kind.zeta > 0.0))
    throw ConfigError("zeta must be positive");

  const double d = static_cast<double>(fit.beta_hat.size());
  const double log_n = std::log(static_cast<double>(n));
  const double log_pstar = std::log(static_cast<double>(p) * std::sqrt(static_cast<double>(n)));
  const double tr = contrast.trace_h;
  const double logdet = contrast.logdet_h;

  CriterionValue out;
  out.kind = kind;
  out.neg2_loglik = -2.0 * fit.loglik;
  switch (kind.tag) {
    case CriterionTag::aic:
      out.complexity_penalty = 2.0 * d;
      out.misspec_penalty = 0.0;
      break;
    case CriterionTag::bic:
      out.complexity_penalty = d * log_n;
      out.misspec_penalty = 0.0;
      break;
    case CriterionTag::gaic:
      out.complexity_penalty = 0.0;
      out.misspec_penalty = 2.0 * tr;
      break;
    case CriterionTag::gbic:
      out.complexity_penalty = d * log_n;
      out.misspec_penalty = -logdet;
      break;
    case CriterionTag::gbic_p:
      out.complexity_penalty = d * log_n;
      out.misspec_penalty = tr - logdet;
      break;
    case CriterionTag::hgbic_p:
    case CriterionTag::hgbic_p_zeta: {
      const double zeta = kind.tag == CriterionTag::hgbic_p ? 1.0 : kind.zeta;
      out.complexity_penalty = zeta * (2.0 * d * log_pstar);
      out.misspec_penalty = zeta * (tr - logdet);
      break;
    }
  }
  out.value = out.neg2_loglik + out.complexity_penalty + out.misspec_penalty;
  return out;
}

SelectionResult select(const std::vector<CriterionValue>& values,
                       const std::vector<FitResult>& fits) {
  if (values.size() != fits.size())
    throw DataError("criterion values and fits must align");

  SelectionResult out;
  out.per_candidate = values;

  Index best = -1;
  int min_count = 0;
  for (Index i = 0; i < static_cast<Index>(values.size()); ++i) {
    if (!fits[i].converged || !std::isfinite(values[i].value)) continue;
    if (best < 0 || values[i].value < values[best].value) {
      best = i;
      min_count = 1;
    } else if (values[i].value == values[best].value) {
      ++min_count;
      if (fits[i].beta_hat.size() < fits[best].beta_hat.size()) best = i;
    }
  }
  if (best < 0) throw NumericError("all candidates rejected; nothing to select");
  out.chosen_index = best;
  out.tie_break_used = min_count > 1;
  return out;
}

}  // namespace glmsel
