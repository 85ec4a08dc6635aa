#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "domecast/catalog.hpp"
#include "domecast/fit.hpp"
#include "domecast/likelihood.hpp"
#include "domecast/pareto.hpp"

namespace domecast {

// Silica for synthetic catalogs: a finite mixture. The default puts mass on
// one representative value per composition class, weighted 42 mafic,
// 105 intermediate, 30 evolved.
struct SilicaMixture {
  std::vector<double> values{50.0, 58.0, 67.0};
  std::vector<double> weights{42.0, 105.0, 30.0};
};

struct RegressionModel {
  RegressionParams params;
  SilicaMixture silica;
};

using GeneratingModel = std::variant<GPaParams, RegressionModel, ExpParams>;

struct NoCensoring {};

// Each eruption starts uniformly within the last `years` before the catalog
// date and is censored if it outlasts the remaining window. Long eruptions
// are therefore censored more often.
struct FixedHorizon {
  double years = 0.0;
};

// A Bernoulli(fraction) subset is censored at a uniform fraction of its true
// duration. Censoring here is informative; use it for bookkeeping, not for
// estimator studies.
struct RandomFraction {
  double fraction = 0.0;
};

using CensoringRule = std::variant<NoCensoring, FixedHorizon, RandomFraction>;

struct SimSpec {
  GeneratingModel model = GPaParams(1.0, 1.0);
  std::size_t n = 1;
  CensoringRule censoring = NoCensoring{};
  std::uint64_t seed = 0;

  void validate() const;
};

Catalog generate(const SimSpec& spec);

// Expected censored share under FixedHorizon: (1/h) * integral_0^h S(x) dx.
double expected_censored_fraction(const GPaParams& p, double horizon);
// Horizon giving the requested expected censored share.
double horizon_for_censored_fraction(const GPaParams& p, double fraction);

CompositionClass class_for_silica(double silica_pct);

struct ParameterRecovery {
  std::string name;
  double truth = 0.0;
  double mean_estimate = 0.0;
  double bias = 0.0;
  double rmse = 0.0;
  double wald95_coverage = 0.0;  // over replications that produced an SE
  std::size_t with_se = 0;
};

struct RecoveryStudy {
  std::size_t n = 0;
  std::size_t replications = 0;
  std::size_t succeeded = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;
  std::vector<ParameterRecovery> parameters;
  // Per-replication estimates, replication order, successful runs only.
  std::vector<std::vector<double>> estimates;
  std::vector<std::vector<double>> standard_errors;
};

// Replications run in parallel with seeds derived from (spec.seed, index);
// the result does not depend on the thread count.
RecoveryStudy recovery_study(const SimSpec& spec, std::size_t replications, const FitOptions& options = {});

}  // namespace domecast
