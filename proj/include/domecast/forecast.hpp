#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "domecast/bayes.hpp"
#include "domecast/catalog.hpp"
#include "domecast/pareto.hpp"

namespace domecast {

inline constexpr double kBandLevel = 0.90;
inline constexpr std::size_t kRetainedDrawCurves = 100;
inline constexpr double kQuartileBracketYears = 1e4;

// Delta_q = (beta + age) [(1 - q)^(-1/alpha) - 1]
double plugin_remaining_quantile(const GPaParams& p, double age, double q);
double plugin_median_shift(const GPaParams& p, double age);

// Per-draw shape and scale, silica-adjusted for regression chains. `silica`
// must be given exactly when the chain comes from the regression model.
struct DrawParameters {
  std::vector<double> shape;
  std::vector<double> scale;
};

DrawParameters effective_parameters(const PosteriorChain& chain, std::optional<double> silica);

struct ExceedanceBand {
  double mean = 1.0;
  double low = 1.0;   // 5% draw quantile
  double high = 1.0;  // 95% draw quantile
};

// Probability that an eruption already `age` years old lasts at least
// `horizon` more years, averaged over the chain, with a 90% draw band.
ExceedanceBand predictive_exceedance(const PosteriorChain& chain, double age, std::optional<double> silica,
                                     double horizon);

struct ForecastCurve {
  std::vector<double> t_grid;
  std::vector<double> mean_probability;
  std::vector<double> band_low;
  std::vector<double> band_high;
  std::vector<double> plug_in_probability;  // at the posterior-mean parameters
  double band_level = kBandLevel;
  double eruption_age = 0.0;
  ModelKind kind = ModelKind::Aggregate;
  std::vector<std::vector<double>> draw_curves;  // first draws, one curve each
};

// Grid points are evaluated in parallel; output order follows t_grid.
ForecastCurve predictive_curve(const PosteriorChain& chain, double age, std::optional<double> silica,
                               std::span<const double> t_grid);
ForecastCurve predictive_curve_serial(const PosteriorChain& chain, double age, std::optional<double> silica,
                                      std::span<const double> t_grid);

enum class QuartileMethod {
  PredictiveMean,  // invert the posterior-mean exceedance curve
  DrawAverage,     // average the per-draw plug-in quantiles
};

struct RemainingQuartiles {
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
};

RemainingQuartiles predictive_quartiles(const PosteriorChain& chain, double age, std::optional<double> silica,
                                        QuartileMethod method = QuartileMethod::PredictiveMean);

// Time t at which the posterior-mean exceedance equals 1 - q.
double predictive_remaining_quantile(const PosteriorChain& chain, double age, std::optional<double> silica, double q);

struct ForecastTarget {
  std::string name;
  double age = 0.0;
  std::optional<double> silica;
  std::optional<CompositionClass> composition;
};

struct NamedForecast {
  ForecastTarget target;
  ForecastCurve curve;
};

std::vector<NamedForecast> forecast_batch(const PosteriorChain& chain, std::span<const ForecastTarget> targets,
                                          std::span<const double> t_grid);

}  // namespace domecast
