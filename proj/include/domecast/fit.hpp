#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "domecast/catalog.hpp"
#include "domecast/likelihood.hpp"
#include "domecast/optimize.hpp"
#include "domecast/pareto.hpp"

namespace domecast {

enum class ModelKind { Aggregate, GroupedClass, Regression, Exponential };
enum class Family { GPa, Exponential };

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view s);
int parameter_count(ModelKind kind);

struct FitOptions {
  // Bounded search for log(beta), beta in years.
  double log_beta_lo = std::log(1e-4);
  double log_beta_hi = std::log(1e4);
  double rel_tol = 1e-8;
  std::size_t audit_grid = 100;

  optimize::SimplexOptions simplex{0.5, 1e-10, 1e-12, 50000};
  std::size_t restarts = 5;
  std::uint64_t seed = 2015;

  double hessian_step = 1e-4;
};

// Point estimates are keyed "alpha", "beta", "gamma_alpha", "gamma_beta" or
// "lambda". `standard_errors` is empty when the Hessian was not positive
// definite; `se_diagnostic` then says why.
struct FitResult {
  ModelKind kind = ModelKind::Aggregate;
  std::optional<CompositionClass> composition;
  std::map<std::string, double> estimates;
  std::map<std::string, double> standard_errors;
  std::string se_diagnostic;
  double nllh_at_mle = 0.0;
  std::size_t n = 0;
  std::size_t n1 = 0;
  int k = 0;
  bool converged = false;
  std::size_t iterations = 0;
  bool at_search_boundary = false;

  double aic() const { return 2.0 * k + 2.0 * nllh_at_mle; }
  double bic() const { return k * std::log(static_cast<double>(n)) + 2.0 * nllh_at_mle; }

  GPaParams gpa() const;
  RegressionParams regression() const;
  ExpParams exponential() const;
  DurationModel duration_model() const;
};

FitResult fit_aggregate(const Catalog& catalog, const FitOptions& options = {});
FitResult fit_aggregate(const SurvivalData& data, const FitOptions& options = {});

// Closed-form lambda = n1 / sum t_i.
FitResult fit_exponential(const Catalog& catalog, const FitOptions& options = {});

FitResult fit_grouped(const Catalog& catalog, CompositionClass composition, Family family,
                      const FitOptions& options = {});

FitResult fit_regression(const Catalog& catalog, const FitOptions& options = {});
FitResult fit_regression(const SurvivalData& data, const FitOptions& options = {});

// Hessian-based standard errors; see optimize::standard_errors.
using optimize::standard_errors;

struct ModelComparison {
  std::string name;
  double nllh = 0.0;
  int k = 0;
  std::size_t n = 0;
  double aic = 0.0;
  double bic = 0.0;
};

// AIC = 2k + 2 nllh, BIC = k log n + 2 nllh.
ModelComparison information_criteria(std::string name, double nllh, int k, std::size_t n);

// One model made of one or more fits on disjoint data (e.g. the three class
// fits of the grouped model): nllh, k and n are summed.
ModelComparison combine(std::string name, std::span<const FitResult> parts);

struct NamedModel {
  std::string name;
  std::vector<FitResult> parts;
};

// Throws DataError unless every model covers the same number of eruptions.
std::vector<ModelComparison> compare_models(const std::vector<NamedModel>& models);

}  // namespace domecast
