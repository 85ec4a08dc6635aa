#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "domecast/bayes.hpp"
#include "domecast/error.hpp"
#include "domecast/fit.hpp"
#include "domecast/simulate.hpp"
#include "domecast/stats.hpp"
#include "quadrature.hpp"
#include "support.hpp"

using namespace domecast;

namespace {

Catalog synthetic(std::size_t n, std::uint64_t seed) {
  SimSpec spec;
  spec.model = GPaParams(0.6487, 0.7018);
  spec.n = n;
  spec.censoring = FixedHorizon{130.0};
  spec.seed = seed;
  return generate(spec);
}

McmcConfig short_config(std::uint64_t seed) {
  McmcConfig c;
  c.burn_in = 2000;
  c.iterations = 40000;
  c.thin = 20;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("propriety truth table") {
  struct Case {
    PriorSpec prior;
    std::size_t n1;
    bool proper;
    bool moments;
  };
  const Case cases[] = {
      {{0, 0, 0, 0}, 163, true, true}, {{0, 0, 0, 0}, 0, false, false}, {{0, 0, 0, 0}, 1, false, false},
      {{0, 0, 0, 0}, 2, true, false},  {{0, 0, 0, 0}, 3, true, true},   {{1, 1, 0, 0}, 1, true, false},
      {{0, 0, 2, 1}, 1, true, true}, {{2, 1, 2, 1}, 0, true, true},   {{0, 0, 2, 0}, 2, false, false},
      {{0, 0, 2, 0}, 3, true, false},  {{0, 0, 2, 0}, 5, true, true},   {{0.5, 1, 0, 0.5}, 0, false, false}, {{1, 1, 1, 1}, 0, true, true},
  };
  for (const auto& c : cases) {
    CAPTURE(c.n1);
    const Propriety p = propriety_check(c.prior, c.n1);
    CHECK(p.proper == c.proper);
    CHECK(p.finite_moments == c.moments);
  }
}

TEST_CASE("log posterior is log-likelihood plus log-prior") {
  const Catalog one({EruptionRecord{"A", 2000.0, 1.0, false, CompositionClass::Mafic, std::nullopt}});
  const double unit[] = {1.0, 1.0};
  CHECK(log_posterior(ModelKind::Aggregate, one, PriorSpec{}, unit) == doctest::Approx(-2.0 * std::log(2.0)));
  const Catalog two({one.records()[0], EruptionRecord{"B", 2001.0, 1.0, true, CompositionClass::Mafic, std::nullopt}});
  CHECK(log_posterior(ModelKind::Aggregate, two, PriorSpec{}, unit) == doctest::Approx(-3.0 * std::log(2.0)));

  const Catalog c = testing::shared_catalog();
  const PriorSpec prior{2.0, 1.0, 1.5, 0.5};
  const double a = 0.9, b = 1.4;
  const double theta[] = {a, b};
  const double expected = -nllh_aggregate(c, GPaParams(a, b)) + log_prior(prior, a, b);
  CHECK(log_posterior(ModelKind::Aggregate, c, prior, theta) == doctest::Approx(expected));
  CHECK(log_prior(PriorSpec{}, a, b) == doctest::Approx(-std::log(a) - std::log(b)));
}

TEST_CASE("posterior means match grid quadrature") {
  const Catalog c = synthetic(300, 5);
  const SurvivalData d = SurvivalData::from(c);
  const PosteriorChain chain = run_mh(ModelKind::Aggregate, c, PriorSpec{}, short_config(7));
  CHECK(chain.draws.size() == 2000);
  const FitResult fit = fit_aggregate(c);
  const double sa = fit.standard_errors.at("alpha") / fit.estimates.at("alpha");
  const double sb = fit.standard_errors.at("beta") / fit.estimates.at("beta");
  const double la = std::log(fit.estimates.at("alpha")), lb = std::log(fit.estimates.at("beta"));
  const auto grid = testing::grid_posterior_moments(d.duration, d.event, la - 7 * sa, la + 7 * sa, lb - 7 * sb,
                                                    lb + 7 * sb);
  const auto alpha = chain.column(0), beta = chain.column(1);
  CHECK(std::abs(stats::mean(alpha) - grid.mean_alpha) < 0.5 * grid.sd_alpha);
  CHECK(std::abs(stats::mean(beta) - grid.mean_beta) < 0.5 * grid.sd_beta);
  CHECK(stats::sd(alpha) == doctest::Approx(grid.sd_alpha).epsilon(0.2));
  CHECK(chain.acceptance_rate > 0.15);
  CHECK(chain.acceptance_rate < 0.6);
}

TEST_CASE("chain is reproducible for a fixed seed and differs across seeds") {
  const Catalog c = synthetic(200, 2);
  auto csv = [&](std::uint64_t seed) {
    std::ostringstream out;
    write_chain_csv(out, run_mh(ModelKind::Aggregate, c, PriorSpec{}, short_config(seed)));
    return out.str();
  };
  CHECK(csv(11) == csv(11));
  CHECK(csv(11) != csv(12));
}

TEST_CASE("regression chain has four columns and survives a CSV round trip") {
  SimSpec spec;
  spec.model = RegressionModel{{0.65, 0.7, 0.04, 0.13}, {}};
  spec.n = 300;
  spec.seed = 4;
  McmcConfig cfg = short_config(3);
  cfg.iterations = 5000;
  cfg.thin = 10;
  const PosteriorChain chain = run_mh(ModelKind::Regression, generate(spec), PriorSpec{}, cfg);
  CHECK(chain.dimension() == 4);
  CHECK(chain.parameter_names[2] == "gamma_alpha");
  std::stringstream io;
  write_chain_csv(io, chain);
  const PosteriorChain back = read_chain_csv(io);
  CHECK(back.kind == ModelKind::Regression);
  CHECK(back.draws == chain.draws);
}

TEST_CASE("thinning records iterations / thin states") {
  McmcConfig cfg = short_config(1);
  cfg.iterations = 1000;
  cfg.thin = 7;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.thin = 8;
  const PosteriorChain chain = run_mh(ModelKind::Aggregate, synthetic(100, 1), PriorSpec{}, cfg);
  CHECK(chain.draws.size() == 125);
}

TEST_CASE("improper posterior is refused with the condition") {
  std::vector<EruptionRecord> rows = testing::shared_catalog().records();
  for (auto& r : rows) r.censored = true;
  rows[0].censored = false;
  try {
    run_mh(ModelKind::Aggregate, Catalog(rows), PriorSpec{}, short_config(1));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("a + n1 > 1") != std::string::npos);
  }
}

TEST_CASE("summary needs enough draws") {
  const PosteriorChain few = PosteriorChain::point_mass(ModelKind::Aggregate, {0.6, 0.7});
  CHECK_THROWS_AS(chain_summary(few), DataError);
  const PosteriorChain chain = run_mh(ModelKind::Aggregate, synthetic(200, 3), PriorSpec{}, short_config(2));
  const auto s = chain_summary(chain);
  REQUIRE(s.size() == 2);
  CHECK(s[0].q025 < s[0].q50);
  CHECK(s[0].q50 < s[0].q975);
}
