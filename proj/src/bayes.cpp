#include "domecast/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "domecast/error.hpp"
#include "domecast/rng.hpp"
#include "domecast/stats.hpp"
#include "domecast/text.hpp"

namespace domecast {

namespace {

bool is_two_parameter(ModelKind kind) { return kind == ModelKind::Aggregate || kind == ModelKind::GroupedClass; }

void require_sampled_kind(ModelKind kind) {
  if (kind == ModelKind::Exponential) throw std::invalid_argument("posterior sampling supports Pareto models only");
}

std::string describe_propriety_failure(const PriorSpec& p, std::size_t n1) {
  return "posterior is improper for prior (a=" + text::format_double(p.a) + ", b=" + text::format_double(p.b) +
         ", c=" + text::format_double(p.c) + ", d=" + text::format_double(p.d) + ") with n1=" + std::to_string(n1) +
         ": propriety needs (c > 0 or a + n1 > 1) and (d > 0 or n1 > c)";
}

}  // namespace

void PriorSpec::validate() const {
  if (!(a >= 0.0 && b >= 0.0 && c >= 0.0 && d >= 0.0)) {
    throw std::invalid_argument("Gamma prior hyperparameters must be >= 0");
  }
}

Propriety propriety_check(const PriorSpec& prior, std::size_t n1_count) {
  const auto n1 = static_cast<double>(n1_count);
  Propriety p;
  p.proper = (prior.c > 0.0 || prior.a + n1 > 1.0) && (prior.d > 0.0 || n1 > prior.c);
  p.finite_moments = p.proper && (prior.d > 0.0 || n1 > prior.c + 2.0);
  return p;
}

double log_prior(const PriorSpec& prior, double alpha, double beta) {
  return (prior.a - 1.0) * std::log(alpha) - prior.b * alpha + (prior.c - 1.0) * std::log(beta) - prior.d * beta;
}

double log_posterior(ModelKind kind, const SurvivalData& data, const PriorSpec& prior, std::span<const double> theta) {
  require_sampled_kind(kind);
  if (is_two_parameter(kind)) {
    if (theta.size() != 2) throw std::invalid_argument("expected (alpha, beta)");
    const GPaParams p(theta[0], theta[1]);
    return -nllh_aggregate(data, p) + log_prior(prior, p.alpha(), p.beta());
  }
  if (theta.size() != 4) throw std::invalid_argument("expected (alpha, beta, gamma_alpha, gamma_beta)");
  const RegressionParams p{theta[0], theta[1], theta[2], theta[3]};
  p.validate();
  return -nllh_regression(data, p) + log_prior(prior, p.alpha, p.beta);
}

double log_posterior(ModelKind kind, const Catalog& catalog, const PriorSpec& prior, std::span<const double> theta) {
  const SurvivalData data =
      kind == ModelKind::Regression ? SurvivalData::with_silica(catalog) : SurvivalData::from(catalog);
  return log_posterior(kind, data, prior, theta);
}

void McmcConfig::validate() const {
  if (thin == 0) throw std::invalid_argument("thin must be >= 1");
  if (iterations == 0 || iterations % thin != 0) {
    throw std::invalid_argument("iterations must be a positive multiple of thin");
  }
  for (double s : proposal_scales) {
    if (!(s > 0.0)) throw std::invalid_argument("proposal scales must be > 0");
  }
  if (adapt && (adapt_interval == 0 || !(adapt_factor > 1.0) || !(accept_low < accept_high))) {
    throw std::invalid_argument("invalid proposal adaptation settings");
  }
}

std::vector<double> PosteriorChain::column(std::size_t j) const {
  std::vector<double> out;
  out.reserve(draws.size());
  for (const auto& d : draws) out.push_back(d.at(j));
  return out;
}

std::vector<std::string> parameter_names(ModelKind kind) {
  if (kind == ModelKind::Regression) return {"alpha", "beta", "gamma_alpha", "gamma_beta"};
  return {"alpha", "beta"};
}

PosteriorChain PosteriorChain::point_mass(ModelKind kind, std::vector<double> theta) {
  require_sampled_kind(kind);
  PosteriorChain chain;
  chain.kind = kind;
  chain.parameter_names = domecast::parameter_names(kind);
  if (theta.size() != chain.parameter_names.size()) throw std::invalid_argument("parameter vector has wrong length");
  chain.draws.push_back(std::move(theta));
  chain.config.iterations = 1;
  chain.config.thin = 1;
  chain.config.burn_in = 0;
  return chain;
}

PosteriorChain run_mh(ModelKind kind, const SurvivalData& data, const PriorSpec& prior, const McmcConfig& config,
                      std::ostream* stream) {
  require_sampled_kind(kind);
  prior.validate();
  config.validate();
  if (data.size() == 0) throw DataError("empty catalog");
  if (!propriety_check(prior, data.n_events).proper) throw DataError(describe_propriety_failure(prior, data.n_events));

  const auto names = parameter_names(kind);
  const std::size_t dim = names.size();
  std::vector<double> scales = config.proposal_scales.empty() ? std::vector<double>(dim, 0.1) : config.proposal_scales;
  if (scales.size() != dim) throw std::invalid_argument("need one proposal scale per parameter");

  std::vector<double> theta;
  if (config.initial) {
    theta = *config.initial;
  } else if (is_two_parameter(kind)) {
    const auto mle = fit_aggregate(data);
    theta = {mle.estimates.at("alpha"), mle.estimates.at("beta")};
  } else {
    const auto mle = fit_regression(data);
    theta = {mle.estimates.at("alpha"), mle.estimates.at("beta"), mle.estimates.at("gamma_alpha"),
             mle.estimates.at("gamma_beta")};
  }
  if (theta.size() != dim) throw std::invalid_argument("initial state has wrong length");

  // Working coordinates w = (log alpha, log beta, gammas); the log-Jacobian of
  // the transform is log alpha + log beta.
  auto to_natural = [&](const std::vector<double>& w) {
    std::vector<double> t = w;
    t[0] = std::exp(w[0]);
    t[1] = std::exp(w[1]);
    return t;
  };
  auto log_target = [&](const std::vector<double>& w) {
    const auto t = to_natural(w);
    if (!(t[0] > 0.0 && t[1] > 0.0) || !std::isfinite(t[0]) || !std::isfinite(t[1])) {
      return -std::numeric_limits<double>::infinity();
    }
    const double lp = log_posterior(kind, data, prior, t) + w[0] + w[1];
    return std::isfinite(lp) ? lp : -std::numeric_limits<double>::infinity();
  };

  std::vector<double> w = theta;
  w[0] = std::log(theta[0]);
  w[1] = std::log(theta[1]);
  double current = log_target(w);
  if (!std::isfinite(current)) throw NumericalError("posterior density is zero at the initial state");

  PosteriorChain chain;
  chain.kind = kind;
  chain.parameter_names = names;
  chain.config = config;
  chain.prior = prior;
  chain.rng_algorithm = std::string(Rng::kAlgorithm);
  chain.draws.reserve(config.iterations / config.thin);
  if (stream) write_chain_header(*stream, names);

  Rng rng(config.seed);
  std::vector<double> proposal(dim);
  std::size_t window_accepted = 0;
  std::size_t burn_accepted = 0;
  std::size_t accepted = 0;
  const std::size_t total = config.burn_in + config.iterations;

  for (std::size_t step = 0; step < total; ++step) {
    for (std::size_t j = 0; j < dim; ++j) proposal[j] = w[j] + scales[j] * rng.normal();
    const double candidate = log_target(proposal);
    const double log_u = std::log(rng.uniform());
    const bool accept = std::isfinite(candidate) && log_u < candidate - current;
    if (accept) {
      w.swap(proposal);
      current = candidate;
    }

    if (step < config.burn_in) {
      if (accept) {
        ++window_accepted;
        ++burn_accepted;
      }
      if (config.adapt && (step + 1) % config.adapt_interval == 0) {
        const double rate = static_cast<double>(window_accepted) / static_cast<double>(config.adapt_interval);
        if (rate < config.accept_low) {
          for (double& s : scales) s /= config.adapt_factor;
        } else if (rate > config.accept_high) {
          for (double& s : scales) s *= config.adapt_factor;
        }
        window_accepted = 0;
      }
      continue;
    }

    if (accept) ++accepted;
    const std::size_t recorded_step = step - config.burn_in + 1;
    if (recorded_step % config.thin == 0) {
      chain.draws.push_back(to_natural(w));
      if (stream) write_chain_row(*stream, chain.draws.back());
    }
  }

  if (config.burn_in > 0 && burn_accepted == 0) {
    throw NumericalError("no proposal accepted during burn-in; proposal scales are badly mis-sized");
  }
  chain.burn_in_acceptance_rate =
      config.burn_in > 0 ? static_cast<double>(burn_accepted) / static_cast<double>(config.burn_in) : 0.0;
  chain.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(config.iterations);
  chain.final_proposal_scales = scales;
  return chain;
}

PosteriorChain run_mh(ModelKind kind, const Catalog& catalog, const PriorSpec& prior, const McmcConfig& config,
                      std::ostream* stream) {
  const SurvivalData data =
      kind == ModelKind::Regression ? SurvivalData::with_silica(catalog) : SurvivalData::from(catalog);
  return run_mh(kind, data, prior, config, stream);
}

std::vector<ParameterSummary> chain_summary(const PosteriorChain& chain) {
  if (chain.draws.size() < kMinSummaryDraws) {
    throw DataError("chain summary needs at least " + std::to_string(kMinSummaryDraws) + " draws, have " +
                    std::to_string(chain.draws.size()));
  }
  std::vector<ParameterSummary> out;
  for (std::size_t j = 0; j < chain.dimension(); ++j) {
    auto col = chain.column(j);
    std::sort(col.begin(), col.end());
    ParameterSummary s;
    s.name = chain.parameter_names[j];
    s.mean = stats::mean(col);
    s.sd = stats::sd(col);
    s.q025 = stats::quantile_sorted(col, 0.025);
    s.q25 = stats::quantile_sorted(col, 0.25);
    s.q50 = stats::quantile_sorted(col, 0.5);
    s.q75 = stats::quantile_sorted(col, 0.75);
    s.q975 = stats::quantile_sorted(col, 0.975);
    out.push_back(std::move(s));
  }
  return out;
}

void write_chain_header(std::ostream& out, const std::vector<std::string>& names) {
  for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
  out << '\n';
}

void write_chain_row(std::ostream& out, std::span<const double> draw) {
  for (std::size_t j = 0; j < draw.size(); ++j) out << (j ? "," : "") << text::format_double(draw[j]);
  out << '\n';
}

void write_chain_csv(std::ostream& out, const PosteriorChain& chain) {
  write_chain_header(out, chain.parameter_names);
  for (const auto& d : chain.draws) write_chain_row(out, d);
}

PosteriorChain read_chain_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  PosteriorChain chain;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto view = text::trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = text::split_csv_line(view);
    if (!fields) throw DataError("chain line " + std::to_string(line_no) + ": bad CSV");
    if (!have_header) {
      for (auto& f : *fields) f = std::string(text::trim(f));
      if (*fields == parameter_names(ModelKind::Aggregate)) {
        chain.kind = ModelKind::Aggregate;
      } else if (*fields == parameter_names(ModelKind::Regression)) {
        chain.kind = ModelKind::Regression;
      } else {
        throw DataError("chain header must be 'alpha,beta' or 'alpha,beta,gamma_alpha,gamma_beta'");
      }
      chain.parameter_names = *fields;
      have_header = true;
      continue;
    }
    if (fields->size() != chain.dimension()) {
      throw DataError("chain line " + std::to_string(line_no) + ": expected " + std::to_string(chain.dimension()) +
                      " values");
    }
    std::vector<double> draw;
    for (const auto& f : *fields) {
      auto v = text::parse_double(f);
      if (!v || !std::isfinite(*v)) throw DataError("chain line " + std::to_string(line_no) + ": bad number '" + f + "'");
      draw.push_back(*v);
    }
    if (!(draw[0] > 0.0 && draw[1] > 0.0)) {
      throw DataError("chain line " + std::to_string(line_no) + ": alpha and beta must be > 0");
    }
    chain.draws.push_back(std::move(draw));
  }
  if (!have_header) throw DataError("chain CSV is empty");
  if (chain.draws.empty()) throw DataError("chain CSV has no draws");
  chain.config.iterations = chain.draws.size();
  chain.config.thin = 1;
  chain.config.burn_in = 0;
  return chain;
}

}  // namespace domecast
