#pragma once

#include <cstddef>
#include <vector>

#include "domecast/catalog.hpp"
#include "domecast/pareto.hpp"

namespace domecast {

// Silica is centred at this value in the log-linear regression model.
inline constexpr double kSilicaCentre = 60.0;

// alpha_i = alpha e^{gamma_alpha (x_i - 60)}, beta_i = beta e^{gamma_beta (x_i - 60)}.
struct RegressionParams {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma_alpha = 0.0;
  double gamma_beta = 0.0;

  // Throws std::invalid_argument unless alpha, beta > 0 and gammas finite.
  void validate() const;
  GPaParams at_silica(double silica_pct) const;

  friend bool operator==(const RegressionParams&, const RegressionParams&) = default;
};

// Columnar copy of a catalog for repeated likelihood evaluation.
struct SurvivalData {
  std::vector<double> duration;
  std::vector<double> event;           // 1 completed, 0 ongoing
  std::vector<double> silica_offset;   // silica - 60; empty unless requested
  std::size_t n_events = 0;

  std::size_t size() const { return duration.size(); }
  bool has_silica() const { return !duration.empty() && silica_offset.size() == duration.size(); }

  static SurvivalData from(const Catalog& catalog);
  // Throws DataError naming the first record without silica.
  static SurvivalData with_silica(const Catalog& catalog);
};

// sum (alpha + d_i) log(1 + t_i/beta) + n1 log(beta/alpha)
double nllh_aggregate(const SurvivalData& data, const GPaParams& p);
double nllh_aggregate(const Catalog& catalog, const GPaParams& p);

// Conditional MLE of alpha at fixed beta: n1 / sum log(1 + t_i/beta).
double profile_alpha(const SurvivalData& data, double beta);
double profile_alpha(const Catalog& catalog, double beta);

double nllh_regression(const SurvivalData& data, const RegressionParams& p);
double nllh_regression(const Catalog& catalog, const RegressionParams& p);

double profile_alpha_regression(const SurvivalData& data, double beta, double gamma_alpha, double gamma_beta);
double profile_alpha_regression(const Catalog& catalog, double beta, double gamma_alpha, double gamma_beta);

// lambda sum t_i - n1 log lambda
double nllh_exponential(const SurvivalData& data, const ExpParams& p);
double nllh_exponential(const Catalog& catalog, const ExpParams& p);

}  // namespace domecast
