#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "domecast/forecast.hpp"
#include "domecast/rng.hpp"

using namespace domecast;

namespace {

PosteriorChain scattered_chain(std::size_t n, std::uint64_t seed) {
  PosteriorChain chain = PosteriorChain::point_mass(ModelKind::Aggregate, {0.65, 0.7});
  chain.draws.clear();
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    chain.draws.push_back({0.65 * std::exp(0.08 * rng.normal()), 0.7 * std::exp(0.15 * rng.normal())});
  }
  return chain;
}

}  // namespace

TEST_CASE("plug-in remaining quartiles match the mpmath oracle") {
  const GPaParams p(0.6487, 0.7018);
  const double shv = 7189.0 / 365.25;
  CHECK(plugin_remaining_quantile(p, shv, 0.25) == doctest::Approx(11.376669328622869).epsilon(1e-12));
  CHECK(plugin_remaining_quantile(p, shv, 0.50) == doctest::Approx(38.955449200517368).epsilon(1e-12));
  CHECK(plugin_remaining_quantile(p, shv, 0.75) == doctest::Approx(152.35710327624432).epsilon(1e-12));
  const double sin = 546.0 / 365.25;
  CHECK(plugin_remaining_quantile(p, sin, 0.25) == doctest::Approx(1.2259856811731545).epsilon(1e-12));
  CHECK(plugin_remaining_quantile(p, sin, 0.50) == doctest::Approx(4.1979617710558568).epsilon(1e-12));
  CHECK(plugin_remaining_quantile(p, sin, 0.75) == doctest::Approx(16.418480808943882).epsilon(1e-12));
}

TEST_CASE("point-mass chain reduces to the plug-in forecast") {
  const PosteriorChain chain = PosteriorChain::point_mass(ModelKind::Aggregate, {0.6487, 0.7018});
  const double s = 546.0 / 365.25;
  const auto q = predictive_quartiles(chain, s, std::nullopt);
  CHECK(q.q25 == doctest::Approx(1.2259856811731545).epsilon(1e-6));
  CHECK(q.q50 == doctest::Approx(4.1979617710558568).epsilon(1e-6));
  CHECK(q.q75 == doctest::Approx(16.418480808943882).epsilon(1e-6));
  const auto band = predictive_exceedance(chain, s, std::nullopt, 10.0);
  CHECK(band.low == band.mean);
  CHECK(band.mean == doctest::Approx(survival(GPaParams(0.6487, 0.7018 + s), 10.0)));
}

TEST_CASE("exceedance curve is monotone, starts at one and the band brackets the mean") {
  const PosteriorChain chain = scattered_chain(800, 3);
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(i * 2.5);
  const ForecastCurve c = predictive_curve(chain, 19.68, std::nullopt, grid);
  CHECK(c.mean_probability[0] == doctest::Approx(1.0));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(c.mean_probability[i] <= c.mean_probability[i - 1]);
    CHECK(c.band_low[i] <= c.mean_probability[i]);
    CHECK(c.mean_probability[i] <= c.band_high[i]);
  }
  CHECK(c.draw_curves.size() == kRetainedDrawCurves);
  CHECK(c.band_level == kBandLevel);
}

TEST_CASE("parallel and serial curves are identical") {
  const PosteriorChain chain = scattered_chain(1000, 8);
  std::vector<double> grid;
  for (int i = 0; i < 64; ++i) grid.push_back(i * 0.75);
  const ForecastCurve a = predictive_curve(chain, 1.49, std::nullopt, grid);
  const ForecastCurve b = predictive_curve_serial(chain, 1.49, std::nullopt, grid);
  CHECK(a.mean_probability == b.mean_probability);
  CHECK(a.band_low == b.band_low);
  CHECK(a.band_high == b.band_high);
  CHECK(a.plug_in_probability == b.plug_in_probability);
}

TEST_CASE("quartile methods bracket and invert") {
  const PosteriorChain chain = scattered_chain(500, 5);
  const double s = 19.68;
  const auto pm = predictive_quartiles(chain, s, std::nullopt, QuartileMethod::PredictiveMean);
  CHECK(pm.q25 < pm.q50);
  CHECK(pm.q50 < pm.q75);
  CHECK(predictive_exceedance(chain, s, std::nullopt, pm.q50).mean == doctest::Approx(0.5).epsilon(1e-5));
  const auto da = predictive_quartiles(chain, s, std::nullopt, QuartileMethod::DrawAverage);
  double avg = 0.0;
  for (const auto& d : chain.draws) avg += plugin_remaining_quantile(GPaParams(d[0], d[1]), s, 0.5);
  CHECK(da.q50 == doctest::Approx(avg / chain.draws.size()));
}

TEST_CASE("regression chains need silica and non-regression chains refuse it") {
  const PosteriorChain reg = PosteriorChain::point_mass(ModelKind::Regression, {0.65, 0.7, 0.0447, 0.1302});
  CHECK_THROWS_AS(predictive_exceedance(reg, 1.0, std::nullopt, 5.0), std::invalid_argument);
  const auto at70 = effective_parameters(reg, 70.0);
  CHECK(at70.shape[0] == doctest::Approx(0.65 * std::exp(0.447)));
  CHECK(at70.scale[0] == doctest::Approx(0.7 * std::exp(1.302)));
  const PosteriorChain agg = PosteriorChain::point_mass(ModelKind::Aggregate, {0.65, 0.7});
  CHECK_THROWS_AS(effective_parameters(agg, 60.0), std::invalid_argument);
}

TEST_CASE("batch forecast covers each target") {
  const PosteriorChain chain = scattered_chain(200, 1);
  const std::vector<ForecastTarget> targets{{"SHV", 19.68, std::nullopt, CompositionClass::Intermediate},
                                            {"Sinabung", 1.49, std::nullopt, CompositionClass::Intermediate}};
  const std::vector<double> grid{0.0, 10.0};
  const auto out = forecast_batch(chain, targets, grid);
  REQUIRE(out.size() == 2);
  CHECK(out[0].target.name == "SHV");
  // an older eruption is more likely to persist
  CHECK(out[0].curve.mean_probability[1] > out[1].curve.mean_probability[1]);
}

TEST_CASE("bad inputs raise") {
  const PosteriorChain chain = scattered_chain(10, 1);
  const std::vector<double> unsorted{0.0, 5.0, 2.0};
  CHECK_THROWS_AS(predictive_curve(chain, 1.0, std::nullopt, unsorted), std::invalid_argument);
  CHECK_THROWS_AS(predictive_exceedance(chain, -1.0, std::nullopt, 1.0), std::invalid_argument);
}
