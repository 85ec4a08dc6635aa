#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "domecast/catalog.hpp"
#include "domecast/fit.hpp"
#include "domecast/likelihood.hpp"

namespace domecast {

// alpha ~ Ga(a, b), beta ~ Ga(c, d). All zero gives the reference prior
// 1/alpha * 1/beta. Regression slopes always get a flat prior.
struct PriorSpec {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  void validate() const;
  bool is_reference() const { return a == 0.0 && b == 0.0 && c == 0.0 && d == 0.0; }
};

struct Propriety {
  bool proper = false;
  bool finite_moments = false;
};

// Integrability of the (alpha, beta) posterior given n1 completed eruptions:
// proper iff (c > 0 or a + n1 > 1) and (d > 0 or n1 > c); finite means and
// variances additionally need d > 0 or n1 > c + 2.
Propriety propriety_check(const PriorSpec& prior, std::size_t n1);

// Unnormalized log prior density of (alpha, beta).
double log_prior(const PriorSpec& prior, double alpha, double beta);

// theta = (alpha, beta) for Aggregate/GroupedClass, (alpha, beta, gamma_alpha,
// gamma_beta) for Regression. Throws std::invalid_argument outside the domain.
double log_posterior(ModelKind kind, const SurvivalData& data, const PriorSpec& prior, std::span<const double> theta);
double log_posterior(ModelKind kind, const Catalog& catalog, const PriorSpec& prior, std::span<const double> theta);

struct McmcConfig {
  std::size_t burn_in = 10000;
  std::size_t iterations = 1000000;
  std::size_t thin = 1000;
  std::uint64_t seed = 1;
  // Random-walk step sizes on (log alpha, log beta, gamma_alpha, gamma_beta);
  // empty means 0.1 for every coordinate.
  std::vector<double> proposal_scales;
  // During burn-in, every `adapt_interval` steps all scales are multiplied or
  // divided by `adapt_factor` to pull acceptance into [accept_low, accept_high].
  bool adapt = true;
  std::size_t adapt_interval = 500;
  double adapt_factor = 1.5;
  double accept_low = 0.2;
  double accept_high = 0.5;
  // Natural-scale starting point; the MLE when absent.
  std::optional<std::vector<double>> initial;

  void validate() const;
};

struct PosteriorChain {
  ModelKind kind = ModelKind::Aggregate;
  std::vector<std::string> parameter_names;
  std::vector<std::vector<double>> draws;  // natural scale, one row per recorded state
  double acceptance_rate = 0.0;            // after burn-in
  double burn_in_acceptance_rate = 0.0;
  std::vector<double> final_proposal_scales;
  McmcConfig config;
  PriorSpec prior;
  std::string rng_algorithm;

  std::size_t dimension() const { return parameter_names.size(); }
  std::vector<double> column(std::size_t j) const;

  // A chain holding a single parameter vector; forecasting from it gives the
  // plug-in answer.
  static PosteriorChain point_mass(ModelKind kind, std::vector<double> theta);
};

std::vector<std::string> parameter_names(ModelKind kind);

// Random-walk Metropolis-Hastings on (log alpha, log beta, gamma_alpha,
// gamma_beta). Each recorded draw is also written to `stream` when given.
PosteriorChain run_mh(ModelKind kind, const Catalog& catalog, const PriorSpec& prior, const McmcConfig& config,
                      std::ostream* stream = nullptr);
PosteriorChain run_mh(ModelKind kind, const SurvivalData& data, const PriorSpec& prior, const McmcConfig& config,
                      std::ostream* stream = nullptr);

struct ParameterSummary {
  std::string name;
  double mean = 0.0;
  double sd = 0.0;
  double q025 = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double q975 = 0.0;
};

inline constexpr std::size_t kMinSummaryDraws = 100;

std::vector<ParameterSummary> chain_summary(const PosteriorChain& chain);

// Header names the parameters; one draw per row.
void write_chain_csv(std::ostream& out, const PosteriorChain& chain);
void write_chain_header(std::ostream& out, const std::vector<std::string>& names);
void write_chain_row(std::ostream& out, std::span<const double> draw);
// Recovers draws and the model kind (from the header); other fields default.
PosteriorChain read_chain_csv(std::istream& in);

}  // namespace domecast
