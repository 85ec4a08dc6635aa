#include "domecast/fit.hpp"

#include <limits>
#include <stdexcept>

#include "domecast/error.hpp"
#include "domecast/kernels.hpp"
#include "domecast/text.hpp"

namespace domecast {

namespace {

void set_standard_errors(FitResult& result, const optimize::StandardErrors& se,
                         const std::vector<std::string>& names, const std::vector<bool>& log_scale) {
  if (!se.se) {
    result.se_diagnostic = se.diagnostic;
    return;
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double working = (*se.se)[i];
    // Delta method back from log scale: se(theta) = theta * se(log theta).
    result.standard_errors[names[i]] = log_scale[i] ? result.estimates.at(names[i]) * working : working;
  }
}

double estimate(const FitResult& fit, const char* name) {
  auto it = fit.estimates.find(name);
  if (it == fit.estimates.end()) {
    throw std::invalid_argument(std::string("fit result has no '") + name + "' estimate");
  }
  return it->second;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Aggregate:
      return "aggregate";
    case ModelKind::GroupedClass:
      return "grouped";
    case ModelKind::Regression:
      return "regression";
    case ModelKind::Exponential:
      return "exponential";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view s) {
  for (ModelKind k : {ModelKind::Aggregate, ModelKind::GroupedClass, ModelKind::Regression, ModelKind::Exponential}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

int parameter_count(ModelKind kind) {
  switch (kind) {
    case ModelKind::Aggregate:
    case ModelKind::GroupedClass:
      return 2;
    case ModelKind::Regression:
      return 4;
    case ModelKind::Exponential:
      return 1;
  }
  return 0;
}

GPaParams FitResult::gpa() const { return GPaParams(estimate(*this, "alpha"), estimate(*this, "beta")); }

RegressionParams FitResult::regression() const {
  RegressionParams p{estimate(*this, "alpha"), estimate(*this, "beta"), 0.0, 0.0};
  if (kind == ModelKind::Regression) {
    p.gamma_alpha = estimate(*this, "gamma_alpha");
    p.gamma_beta = estimate(*this, "gamma_beta");
  }
  return p;
}

ExpParams FitResult::exponential() const { return ExpParams(estimate(*this, "lambda")); }

DurationModel FitResult::duration_model() const {
  if (kind == ModelKind::Exponential) return exponential();
  if (kind == ModelKind::Regression) throw std::invalid_argument("regression fits have a per-eruption duration law");
  return gpa();
}

FitResult fit_aggregate(const SurvivalData& data, const FitOptions& options) {
  if (data.n_events < 2) {
    throw DataError("generalized Pareto fit needs at least 2 completed eruptions, have " +
                    std::to_string(data.n_events));
  }
  const auto n1 = static_cast<double>(data.n_events);

  // Profile NLLH in u = log(beta): with alpha = n1 / S(beta),
  // alpha * S + S_events + n1 log(beta / alpha) = n1 + S_events + n1 log(beta / alpha).
  auto profile = [&](double u) {
    const double beta = std::exp(u);
    const auto sums = kernels::log_term_sums(data.duration, data.event, beta);
    const double alpha = n1 / sums.all;
    return n1 + sums.events + n1 * std::log(beta / alpha);
  };
  const auto best = optimize::scan_and_refine(profile, options.log_beta_lo, options.log_beta_hi, options.audit_grid,
                                              options.rel_tol);
  if (!std::isfinite(best.value)) throw NumericalError("aggregate fit: profile likelihood is not finite");

  const double beta = std::exp(best.x);
  const double alpha = profile_alpha(data, beta);

  FitResult result;
  result.kind = ModelKind::Aggregate;
  result.estimates = {{"alpha", alpha}, {"beta", beta}};
  result.nllh_at_mle = nllh_aggregate(data, GPaParams(alpha, beta));
  result.n = data.size();
  result.n1 = data.n_events;
  result.k = 2;
  result.converged = best.converged;
  result.iterations = best.iterations;
  const double grid_step = (options.log_beta_hi - options.log_beta_lo) / static_cast<double>(options.audit_grid - 1);
  result.at_search_boundary =
      best.x - options.log_beta_lo < grid_step || options.log_beta_hi - best.x < grid_step;

  auto working = [&](const std::vector<double>& w) {
    return nllh_aggregate(data, GPaParams(std::exp(w[0]), std::exp(w[1])));
  };
  set_standard_errors(result, standard_errors(working, {std::log(alpha), std::log(beta)}, options.hessian_step),
                      {"alpha", "beta"}, {true, true});
  return result;
}

FitResult fit_aggregate(const Catalog& catalog, const FitOptions& options) {
  if (catalog.empty()) throw DataError("empty catalog");
  return fit_aggregate(SurvivalData::from(catalog), options);
}

FitResult fit_exponential(const Catalog& catalog, const FitOptions& options) {
  if (catalog.empty()) throw DataError("empty catalog");
  const SurvivalData data = SurvivalData::from(catalog);
  if (data.n_events < 1) throw DataError("exponential fit needs at least 1 completed eruption");
  kernels::CompensatedSum total;
  for (double t : data.duration) total.add(t);
  const double lambda = static_cast<double>(data.n_events) / total.value();

  FitResult result;
  result.kind = ModelKind::Exponential;
  result.estimates = {{"lambda", lambda}};
  result.nllh_at_mle = nllh_exponential(data, ExpParams(lambda));
  result.n = data.size();
  result.n1 = data.n_events;
  result.k = 1;
  result.converged = true;
  auto working = [&](const std::vector<double>& w) { return nllh_exponential(data, ExpParams(std::exp(w[0]))); };
  set_standard_errors(result, standard_errors(working, {std::log(lambda)}, options.hessian_step), {"lambda"}, {true});
  return result;
}

FitResult fit_grouped(const Catalog& catalog, CompositionClass composition, Family family,
                      const FitOptions& options) {
  const Catalog sub = catalog.of_class(composition);
  if (sub.empty()) throw DataError("no eruptions of class '" + std::string(to_string(composition)) + "'");
  FitResult result;
  if (family == Family::Exponential) {
    result = fit_exponential(sub, options);
  } else {
    result = fit_aggregate(sub, options);
    result.kind = ModelKind::GroupedClass;
  }
  result.composition = composition;
  return result;
}

FitResult fit_regression(const SurvivalData& data, const FitOptions& options) {
  if (!data.has_silica()) throw DataError("regression model requires silica_pct on every record");
  if (data.n_events < 4) {
    throw DataError("regression fit needs at least 4 completed eruptions, have " + std::to_string(data.n_events));
  }

  // Search over w = (log beta, gamma_alpha, gamma_beta) with alpha profiled out.
  auto profiled = [&](const std::vector<double>& w) {
    const double beta = std::exp(w[0]);
    if (!std::isfinite(beta) || beta <= 0.0) return std::numeric_limits<double>::infinity();
    const double alpha = profile_alpha_regression(data, beta, w[1], w[2]);
    if (!std::isfinite(alpha) || alpha <= 0.0) return std::numeric_limits<double>::infinity();
    return nllh_regression(data, {alpha, beta, w[1], w[2]});
  };

  // The regression nests the aggregate model; starting one run at the
  // aggregate optimum guarantees the nested NLLH ordering.
  const FitResult aggregate = fit_aggregate(data, options);
  const std::vector<std::vector<double>> starts = {{0.0, 0.0, 0.0},
                                                   {std::log(aggregate.estimates.at("beta")), 0.0, 0.0}};
  const auto best = optimize::multistart_nelder_mead(profiled, starts, options.restarts, {0.5, 0.05, 0.05},
                                                     options.seed, options.simplex);
  if (!std::isfinite(best.value)) throw NumericalError("regression fit: likelihood is not finite at the optimum");

  RegressionParams p;
  p.beta = std::exp(best.x[0]);
  p.gamma_alpha = best.x[1];
  p.gamma_beta = best.x[2];
  p.alpha = profile_alpha_regression(data, p.beta, p.gamma_alpha, p.gamma_beta);

  FitResult result;
  result.kind = ModelKind::Regression;
  result.estimates = {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma_alpha", p.gamma_alpha}, {"gamma_beta", p.gamma_beta}};
  result.nllh_at_mle = nllh_regression(data, p);
  result.n = data.size();
  result.n1 = data.n_events;
  result.k = 4;
  result.converged = best.converged;
  result.iterations = best.evaluations;

  auto working = [&](const std::vector<double>& w) {
    return nllh_regression(data, {std::exp(w[0]), std::exp(w[1]), w[2], w[3]});
  };
  set_standard_errors(result,
                      standard_errors(working, {std::log(p.alpha), std::log(p.beta), p.gamma_alpha, p.gamma_beta},
                                      options.hessian_step),
                      {"alpha", "beta", "gamma_alpha", "gamma_beta"}, {true, true, false, false});
  return result;
}

FitResult fit_regression(const Catalog& catalog, const FitOptions& options) {
  if (catalog.empty()) throw DataError("empty catalog");
  return fit_regression(SurvivalData::with_silica(catalog), options);
}

ModelComparison information_criteria(std::string name, double nllh, int k, std::size_t n) {
  if (n == 0) throw DataError("information criteria need n > 0");
  ModelComparison m;
  m.name = std::move(name);
  m.nllh = nllh;
  m.k = k;
  m.n = n;
  m.aic = 2.0 * k + 2.0 * nllh;
  m.bic = k * std::log(static_cast<double>(n)) + 2.0 * nllh;
  return m;
}

ModelComparison combine(std::string name, std::span<const FitResult> parts) {
  if (parts.empty()) throw DataError("model '" + name + "' has no fitted parts");
  kernels::CompensatedSum nllh;
  int k = 0;
  std::size_t n = 0;
  for (const auto& f : parts) {
    nllh.add(f.nllh_at_mle);
    k += f.k;
    n += f.n;
  }
  return information_criteria(std::move(name), nllh.value(), k, n);
}

std::vector<ModelComparison> compare_models(const std::vector<NamedModel>& models) {
  std::vector<ModelComparison> rows;
  rows.reserve(models.size());
  for (const auto& m : models) rows.push_back(combine(m.name, m.parts));
  for (const auto& r : rows) {
    if (r.n != rows.front().n) {
      throw DataError("model '" + r.name + "' covers " + std::to_string(r.n) + " eruptions but '" +
                      rows.front().name + "' covers " + std::to_string(rows.front().n));
    }
  }
  return rows;
}

}  // namespace domecast
