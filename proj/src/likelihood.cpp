#include "domecast/likelihood.hpp"

#include <cmath>
#include <stdexcept>

#include "domecast/error.hpp"
#include "domecast/kernels.hpp"

namespace domecast {

namespace {

void require_nonempty(const SurvivalData& data) {
  if (data.size() == 0) throw DataError("empty catalog");
}

void require_events(const SurvivalData& data) {
  if (data.n_events == 0) {
    throw DataError("no completed eruptions: the conditional MLE of alpha is unbounded");
  }
}

void require_silica(const SurvivalData& data) {
  if (!data.has_silica()) throw DataError("regression model requires silica_pct on every record");
}

}  // namespace

void RegressionParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("regression alpha must be > 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("regression beta must be > 0");
  if (!std::isfinite(gamma_alpha) || !std::isfinite(gamma_beta)) {
    throw std::invalid_argument("regression gammas must be finite");
  }
}

GPaParams RegressionParams::at_silica(double silica_pct) const {
  const double x = silica_pct - kSilicaCentre;
  return GPaParams(alpha * std::exp(gamma_alpha * x), beta * std::exp(gamma_beta * x));
}

SurvivalData SurvivalData::from(const Catalog& catalog) {
  SurvivalData d;
  d.duration.reserve(catalog.size());
  d.event.reserve(catalog.size());
  for (const auto& r : catalog.records()) {
    d.duration.push_back(r.duration);
    d.event.push_back(r.censored ? 0.0 : 1.0);
  }
  d.n_events = catalog.n_completed();
  return d;
}

SurvivalData SurvivalData::with_silica(const Catalog& catalog) {
  SurvivalData d = from(catalog);
  d.silica_offset.reserve(catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& r = catalog.records()[i];
    if (!r.silica_pct) {
      throw DataError("record " + std::to_string(i + 1) + " (" + r.volcano_name +
                      ") has no silica_pct; the regression model needs it");
    }
    d.silica_offset.push_back(*r.silica_pct - kSilicaCentre);
  }
  return d;
}

double nllh_aggregate(const SurvivalData& data, const GPaParams& p) {
  require_nonempty(data);
  const auto sums = kernels::log_term_sums(data.duration, data.event, p.beta());
  const auto n1 = static_cast<double>(data.n_events);
  return p.alpha() * sums.all + sums.events + n1 * std::log(p.beta() / p.alpha());
}

double nllh_aggregate(const Catalog& catalog, const GPaParams& p) {
  return nllh_aggregate(SurvivalData::from(catalog), p);
}

double profile_alpha(const SurvivalData& data, double beta) {
  require_events(data);
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  const auto sums = kernels::log_term_sums(data.duration, data.event, beta);
  return static_cast<double>(data.n_events) / sums.all;
}

double profile_alpha(const Catalog& catalog, double beta) { return profile_alpha(SurvivalData::from(catalog), beta); }

double nllh_regression(const SurvivalData& data, const RegressionParams& p) {
  require_nonempty(data);
  require_silica(data);
  p.validate();
  return kernels::regression_nllh(data.duration, data.event, data.silica_offset,
                                  {p.alpha, p.beta, p.gamma_alpha, p.gamma_beta});
}

double nllh_regression(const Catalog& catalog, const RegressionParams& p) {
  return nllh_regression(SurvivalData::with_silica(catalog), p);
}

double profile_alpha_regression(const SurvivalData& data, double beta, double gamma_alpha, double gamma_beta) {
  require_events(data);
  require_silica(data);
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  const double denom = kernels::regression_shape_sum(data.duration, data.silica_offset, beta, gamma_alpha, gamma_beta);
  return static_cast<double>(data.n_events) / denom;
}

double profile_alpha_regression(const Catalog& catalog, double beta, double gamma_alpha, double gamma_beta) {
  return profile_alpha_regression(SurvivalData::with_silica(catalog), beta, gamma_alpha, gamma_beta);
}

double nllh_exponential(const SurvivalData& data, const ExpParams& p) {
  require_nonempty(data);
  kernels::CompensatedSum total;
  for (double t : data.duration) total.add(t);
  return p.lambda() * total.value() - static_cast<double>(data.n_events) * std::log(p.lambda());
}

double nllh_exponential(const Catalog& catalog, const ExpParams& p) {
  return nllh_exponential(SurvivalData::from(catalog), p);
}

}  // namespace domecast
