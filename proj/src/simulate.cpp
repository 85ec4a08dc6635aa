#include "domecast/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "domecast/error.hpp"
#include "domecast/rng.hpp"

namespace domecast {

namespace {

constexpr double kWald95 = 1.959963984540054;

std::string sim_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "SIM%06zu", i + 1);
  return buf;
}

std::size_t draw_category(const std::vector<double>& weights, double u) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double cumulative = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    cumulative += weights[k] / total;
    if (u < cumulative) return k;
  }
  return weights.size() - 1;
}

std::vector<std::string> truth_names(const GeneratingModel& m) {
  if (std::holds_alternative<GPaParams>(m)) return {"alpha", "beta"};
  if (std::holds_alternative<RegressionModel>(m)) return {"alpha", "beta", "gamma_alpha", "gamma_beta"};
  return {"lambda"};
}

std::vector<double> truth_values(const GeneratingModel& m) {
  if (const auto* g = std::get_if<GPaParams>(&m)) return {g->alpha(), g->beta()};
  if (const auto* r = std::get_if<RegressionModel>(&m)) {
    return {r->params.alpha, r->params.beta, r->params.gamma_alpha, r->params.gamma_beta};
  }
  return {std::get<ExpParams>(m).lambda()};
}

FitResult fit_for(const GeneratingModel& m, const Catalog& catalog, const FitOptions& options) {
  if (std::holds_alternative<GPaParams>(m)) return fit_aggregate(catalog, options);
  if (std::holds_alternative<RegressionModel>(m)) return fit_regression(catalog, options);
  return fit_exponential(catalog, options);
}

}  // namespace

void SimSpec::validate() const {
  if (n < 1) throw std::invalid_argument("simulation needs n >= 1");
  if (const auto* h = std::get_if<FixedHorizon>(&censoring); h && !(h->years > 0.0)) {
    throw std::invalid_argument("censoring horizon must be > 0");
  }
  if (const auto* f = std::get_if<RandomFraction>(&censoring); f && !(f->fraction >= 0.0 && f->fraction < 1.0)) {
    throw std::invalid_argument("censored fraction must lie in [0, 1)");
  }
  if (const auto* r = std::get_if<RegressionModel>(&model)) {
    r->params.validate();
    if (r->silica.values.empty() || r->silica.values.size() != r->silica.weights.size()) {
      throw std::invalid_argument("silica mixture needs matching values and weights");
    }
    for (double w : r->silica.weights) {
      if (!(w >= 0.0)) throw std::invalid_argument("silica mixture weights must be >= 0");
    }
    for (double x : r->silica.values) {
      if (!(x >= kMinSilicaPct && x <= kMaxSilicaPct)) throw std::invalid_argument("silica value outside [30, 90]");
    }
  }
}

CompositionClass class_for_silica(double silica_pct) {
  if (silica_pct < 52.0) return CompositionClass::Mafic;
  if (silica_pct < 63.0) return CompositionClass::Intermediate;
  return CompositionClass::Evolved;
}

Catalog generate(const SimSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const SilicaMixture default_mixture;
  std::vector<EruptionRecord> records;
  records.reserve(spec.n);

  for (std::size_t i = 0; i < spec.n; ++i) {
    EruptionRecord r;
    r.volcano_name = sim_name(i);

    // Every record gets a silica value and class; only the regression model
    // lets it change the duration law.
    const auto* reg = std::get_if<RegressionModel>(&spec.model);
    const SilicaMixture& mixture = reg ? reg->silica : default_mixture;
    const double x = mixture.values[draw_category(mixture.weights, rng.uniform())];
    r.silica_pct = x;
    r.composition = class_for_silica(x);

    double duration = 0.0;
    if (const auto* g = std::get_if<GPaParams>(&spec.model)) {
      duration = sample(*g, rng.uniform());
    } else if (reg) {
      duration = sample(reg->params.at_silica(x), rng.uniform());
    } else {
      duration = exp_sample(std::get<ExpParams>(spec.model), rng.uniform());
    }

    if (const auto* h = std::get_if<FixedHorizon>(&spec.censoring)) {
      const double start = rng.uniform() * h->years;
      const double window = h->years - start;
      r.start_year = start;
      if (duration > window) {
        duration = window;
        r.censored = true;
      }
    } else if (const auto* f = std::get_if<RandomFraction>(&spec.censoring)) {
      const bool censor = rng.uniform() < f->fraction;
      const double fraction = rng.uniform();
      if (censor) {
        duration *= fraction;
        r.censored = true;
      }
    }
    r.duration = duration;
    records.push_back(std::move(r));
  }
  return Catalog(std::move(records), "synthetic");
}

double expected_censored_fraction(const GPaParams& p, double horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
  const double a = p.alpha();
  const double b = p.beta();
  const double l = std::log1p(horizon / b);
  // (b / h) * ((1 + h/b)^(1-a) - 1) / (1 - a), with the a -> 1 limit b/h * l.
  if (std::abs(1.0 - a) < 1e-12) return b / horizon * l;
  return b / horizon * std::expm1((1.0 - a) * l) / (1.0 - a);
}

double horizon_for_censored_fraction(const GPaParams& p, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw std::invalid_argument("censored fraction must lie in (0, 1)");
  // The expected fraction falls monotonically from 1 (h -> 0) to 0 (h -> inf).
  double lo = 1e-12 * p.beta();
  double hi = p.beta();
  while (expected_censored_fraction(p, hi) > fraction) {
    hi *= 2.0;
    if (!std::isfinite(hi)) throw NumericalError("no horizon reaches the requested censored fraction");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (expected_censored_fraction(p, mid) > fraction) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

RecoveryStudy recovery_study(const SimSpec& spec, std::size_t replications, const FitOptions& options) {
  spec.validate();
  if (replications < 10) throw std::invalid_argument("a recovery study needs at least 10 replications");

  const auto names = truth_names(spec.model);
  const auto truth = truth_values(spec.model);
  const std::size_t dim = names.size();

  std::vector<std::optional<std::vector<double>>> estimates(replications);
  std::vector<std::optional<std::vector<double>>> ses(replications);
  std::vector<std::string> errors(replications);

  const auto reps = static_cast<long long>(replications);
#pragma omp parallel for schedule(dynamic)
  for (long long rep = 0; rep < reps; ++rep) {
    const auto k = static_cast<std::size_t>(rep);
    SimSpec replica = spec;
    replica.seed = derive_seed(spec.seed, k + 1);
    try {
      const FitResult fit = fit_for(spec.model, generate(replica), options);
      std::vector<double> est(dim);
      for (std::size_t j = 0; j < dim; ++j) est[j] = fit.estimates.at(names[j]);
      estimates[k] = std::move(est);
      if (fit.standard_errors.size() == dim) {
        std::vector<double> se(dim);
        for (std::size_t j = 0; j < dim; ++j) se[j] = fit.standard_errors.at(names[j]);
        ses[k] = std::move(se);
      }
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }

  RecoveryStudy study;
  study.n = spec.n;
  study.replications = replications;
  for (std::size_t k = 0; k < replications; ++k) {
    if (estimates[k]) {
      ++study.succeeded;
      study.estimates.push_back(*estimates[k]);
      study.standard_errors.push_back(ses[k].value_or(std::vector<double>{}));
    } else {
      ++study.failed;
      study.failures.push_back("replication " + std::to_string(k) + ": " + errors[k]);
    }
  }

  for (std::size_t j = 0; j < dim; ++j) {
    ParameterRecovery pr;
    pr.name = names[j];
    pr.truth = truth[j];
    double sum = 0.0;
    double sq = 0.0;
    std::size_t covered = 0;
    for (std::size_t r = 0; r < study.estimates.size(); ++r) {
      const double e = study.estimates[r][j];
      sum += e;
      sq += (e - truth[j]) * (e - truth[j]);
      if (!study.standard_errors[r].empty()) {
        ++pr.with_se;
        if (std::abs(e - truth[j]) <= kWald95 * study.standard_errors[r][j]) ++covered;
      }
    }
    if (study.succeeded > 0) {
      const auto m = static_cast<double>(study.succeeded);
      pr.mean_estimate = sum / m;
      pr.bias = pr.mean_estimate - truth[j];
      pr.rmse = std::sqrt(sq / m);
    }
    pr.wald95_coverage = pr.with_se ? static_cast<double>(covered) / static_cast<double>(pr.with_se) : 0.0;
    study.parameters.push_back(std::move(pr));
  }
  return study;
}

}  // namespace domecast
