#include "domecast/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "domecast/error.hpp"
#include "domecast/kernels.hpp"
#include "domecast/stats.hpp"

namespace domecast {

namespace {

void require_age(double age) {
  if (!(age >= 0.0)) throw std::invalid_argument("eruption age must be >= 0");
}

void check_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("forecast grid is empty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0)) throw std::invalid_argument("forecast grid values must be >= 0");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("forecast grid must be strictly ascending");
  }
}

double mean_exceedance(const DrawParameters& p, double age, double horizon) {
  kernels::CompensatedSum sum;
  for (std::size_t j = 0; j < p.shape.size(); ++j) {
    sum.add(std::exp(-p.shape[j] * std::log1p(horizon / (p.scale[j] + age))));
  }
  return sum.value() / static_cast<double>(p.shape.size());
}

ExceedanceBand band_at(const DrawParameters& p, double age, double horizon, std::vector<double>& scratch) {
  scratch.resize(p.shape.size());
  kernels::draw_exceedance_serial(p.shape, p.scale, age, horizon, scratch);
  ExceedanceBand band;
  band.mean = stats::mean(scratch);
  std::sort(scratch.begin(), scratch.end());
  band.low = stats::quantile_sorted(scratch, 0.5 * (1.0 - kBandLevel));
  band.high = stats::quantile_sorted(scratch, 0.5 * (1.0 + kBandLevel));
  return band;
}

GPaParams posterior_mean_parameters(const PosteriorChain& chain, std::optional<double> silica) {
  std::vector<double> m(chain.dimension());
  for (std::size_t j = 0; j < m.size(); ++j) m[j] = stats::mean(chain.column(j));
  if (chain.kind == ModelKind::Regression) return RegressionParams{m[0], m[1], m[2], m[3]}.at_silica(*silica);
  return GPaParams(m[0], m[1]);
}

ForecastCurve curve_shell(const PosteriorChain& chain, double age, std::optional<double> silica,
                          std::span<const double> t_grid, const DrawParameters& p) {
  ForecastCurve curve;
  curve.t_grid.assign(t_grid.begin(), t_grid.end());
  curve.eruption_age = age;
  curve.kind = chain.kind;
  const std::size_t m = t_grid.size();
  curve.mean_probability.resize(m);
  curve.band_low.resize(m);
  curve.band_high.resize(m);
  curve.plug_in_probability.resize(m);

  const GPaParams plug = condition_on_age(posterior_mean_parameters(chain, silica), age);
  for (std::size_t i = 0; i < m; ++i) curve.plug_in_probability[i] = survival(plug, t_grid[i]);

  const std::size_t keep = std::min(kRetainedDrawCurves, p.shape.size());
  curve.draw_curves.assign(keep, std::vector<double>(m));
  for (std::size_t j = 0; j < keep; ++j) {
    const GPaParams draw(p.shape[j], p.scale[j] + age);
    for (std::size_t i = 0; i < m; ++i) curve.draw_curves[j][i] = survival(draw, t_grid[i]);
  }
  return curve;
}

}  // namespace

double plugin_remaining_quantile(const GPaParams& p, double age, double q) {
  require_age(age);
  return quantile(condition_on_age(p, age), q);
}

double plugin_median_shift(const GPaParams& p, double age) { return plugin_remaining_quantile(p, age, 0.5); }

DrawParameters effective_parameters(const PosteriorChain& chain, std::optional<double> silica) {
  if (chain.draws.empty()) throw DataError("posterior chain has no draws");
  const bool regression = chain.kind == ModelKind::Regression;
  if (regression && !silica) throw std::invalid_argument("a regression chain needs the eruption's silica content");
  if (!regression && silica) throw std::invalid_argument("silica applies only to regression chains");

  DrawParameters out;
  out.shape.reserve(chain.draws.size());
  out.scale.reserve(chain.draws.size());
  for (const auto& d : chain.draws) {
    if (regression) {
      const GPaParams p = RegressionParams{d[0], d[1], d[2], d[3]}.at_silica(*silica);
      out.shape.push_back(p.alpha());
      out.scale.push_back(p.beta());
    } else {
      out.shape.push_back(d[0]);
      out.scale.push_back(d[1]);
    }
  }
  return out;
}

ExceedanceBand predictive_exceedance(const PosteriorChain& chain, double age, std::optional<double> silica,
                                     double horizon) {
  require_age(age);
  if (!(horizon >= 0.0)) throw std::invalid_argument("forecast horizon must be >= 0");
  const DrawParameters p = effective_parameters(chain, silica);
  std::vector<double> scratch;
  return band_at(p, age, horizon, scratch);
}

ForecastCurve predictive_curve_serial(const PosteriorChain& chain, double age, std::optional<double> silica,
                                      std::span<const double> t_grid) {
  require_age(age);
  check_grid(t_grid);
  const DrawParameters p = effective_parameters(chain, silica);
  ForecastCurve curve = curve_shell(chain, age, silica, t_grid, p);
  std::vector<double> scratch;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const auto band = band_at(p, age, t_grid[i], scratch);
    curve.mean_probability[i] = band.mean;
    curve.band_low[i] = band.low;
    curve.band_high[i] = band.high;
  }
  return curve;
}

ForecastCurve predictive_curve(const PosteriorChain& chain, double age, std::optional<double> silica,
                               std::span<const double> t_grid) {
  require_age(age);
  check_grid(t_grid);
  const DrawParameters p = effective_parameters(chain, silica);
  ForecastCurve curve = curve_shell(chain, age, silica, t_grid, p);
  const auto m = static_cast<long long>(t_grid.size());
#pragma omp parallel
  {
    std::vector<double> scratch;
#pragma omp for schedule(static)
    for (long long i = 0; i < m; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const auto band = band_at(p, age, t_grid[k], scratch);
      curve.mean_probability[k] = band.mean;
      curve.band_low[k] = band.low;
      curve.band_high[k] = band.high;
    }
  }
  return curve;
}

double predictive_remaining_quantile(const PosteriorChain& chain, double age, std::optional<double> silica, double q) {
  require_age(age);
  if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("probability must lie in [0, 1)");
  if (q == 0.0) return 0.0;
  const DrawParameters p = effective_parameters(chain, silica);
  const double target = 1.0 - q;

  double lo = 0.0;
  double hi = kQuartileBracketYears;
  if (mean_exceedance(p, age, hi) > target) {
    throw NumericalError("remaining-duration quantile lies beyond " + std::to_string(kQuartileBracketYears) +
                         " years; bisection bracket failed");
  }
  while (hi - lo > 1e-6 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mean_exceedance(p, age, mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

RemainingQuartiles predictive_quartiles(const PosteriorChain& chain, double age, std::optional<double> silica,
                                        QuartileMethod method) {
  if (method == QuartileMethod::PredictiveMean) {
    return {predictive_remaining_quantile(chain, age, silica, 0.25),
            predictive_remaining_quantile(chain, age, silica, 0.50),
            predictive_remaining_quantile(chain, age, silica, 0.75)};
  }
  require_age(age);
  const DrawParameters p = effective_parameters(chain, silica);
  auto average = [&](double q) {
    kernels::CompensatedSum sum;
    for (std::size_t j = 0; j < p.shape.size(); ++j) {
      sum.add(plugin_remaining_quantile(GPaParams(p.shape[j], p.scale[j]), age, q));
    }
    return sum.value() / static_cast<double>(p.shape.size());
  };
  return {average(0.25), average(0.5), average(0.75)};
}

std::vector<NamedForecast> forecast_batch(const PosteriorChain& chain, std::span<const ForecastTarget> targets,
                                          std::span<const double> t_grid) {
  std::vector<NamedForecast> out;
  out.reserve(targets.size());
  for (const auto& target : targets) {
    const auto silica = chain.kind == ModelKind::Regression ? target.silica : std::nullopt;
    out.push_back({target, predictive_curve(chain, target.age, silica, t_grid)});
  }
  return out;
}

}  // namespace domecast
