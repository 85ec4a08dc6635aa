#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "domecast/error.hpp"
#include "domecast/likelihood.hpp"
#include "support.hpp"

using namespace domecast;

TEST_CASE("aggregate NLLH matches a direct sum of log-density and log-survival terms") {
  const Catalog c = testing::shared_catalog();
  const GPaParams p(0.9, 1.7);
  double direct = 0.0;
  for (const auto& r : c.records()) {
    direct -= r.censored ? log_survival(p, r.duration) : log_density(p, r.duration);
  }
  CHECK(nllh_aggregate(c, p) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("aggregate NLLH at the oracle optimum") {
  const Catalog c = testing::shared_catalog();
  CHECK(nllh_aggregate(c, GPaParams(1.0313404182697787, 2.2127994187757257)) ==
        doctest::Approx(24.246362411412567).epsilon(1e-12));
}

TEST_CASE("profile alpha maximizes the likelihood over alpha for fixed beta") {
  const Catalog c = testing::shared_catalog();
  for (double beta : {0.3, 1.0, 4.0}) {
    const double a = profile_alpha(c, beta);
    const double f0 = nllh_aggregate(c, GPaParams(a, beta));
    CHECK(f0 < nllh_aggregate(c, GPaParams(a * 1.01, beta)));
    CHECK(f0 < nllh_aggregate(c, GPaParams(a * 0.99, beta)));
  }
}

TEST_CASE("regression NLLH matches the oracle and reduces to the aggregate at zero slopes") {
  const Catalog c = testing::shared_catalog();
  CHECK(nllh_regression(c, RegressionParams{0.7, 1.2, 0.03, 0.1}) ==
        doctest::Approx(23.078167770618551).epsilon(1e-12));
  CHECK(nllh_regression(c, RegressionParams{0.9, 1.7, 0.0, 0.0}) ==
        doctest::Approx(nllh_aggregate(c, GPaParams(0.9, 1.7))).epsilon(1e-13));
}

TEST_CASE("regression coefficients act on silica offset from 60") {
  const RegressionParams p{1.0, 1.0, std::log(1.5) / 10.0, std::log(2.0) / 10.0};
  const GPaParams at70 = p.at_silica(70.0);
  CHECK(at70.alpha() == doctest::Approx(1.5));
  CHECK(at70.beta() == doctest::Approx(2.0));
  CHECK(p.at_silica(60.0).alpha() == doctest::Approx(1.0));
}

TEST_CASE("profile alpha for the regression model maximizes over the level") {
  const Catalog c = testing::shared_catalog();
  const double a = profile_alpha_regression(c, 1.2, 0.03, 0.1);
  const double f0 = nllh_regression(c, {a, 1.2, 0.03, 0.1});
  CHECK(f0 < nllh_regression(c, {a * 1.01, 1.2, 0.03, 0.1}));
  CHECK(f0 < nllh_regression(c, {a * 0.99, 1.2, 0.03, 0.1}));
}

TEST_CASE("exponential NLLH at the closed-form MLE") {
  const Catalog c = testing::shared_catalog();
  CHECK(nllh_exponential(c, ExpParams(0.21021652301870927)) == doctest::Approx(25.596172174501444).epsilon(1e-12));
}

TEST_CASE("regression data without silica names the record") {
  std::vector<EruptionRecord> rows = testing::shared_catalog().records();
  rows[4].silica_pct.reset();
  const Catalog c(rows);
  try {
    SurvivalData::with_silica(c);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(rows[4].volcano_name) != std::string::npos);
  }
}

TEST_CASE("invalid parameters raise") {
  const Catalog c = testing::shared_catalog();
  CHECK_THROWS_AS(nllh_regression(c, RegressionParams{-1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(profile_alpha(c, 0.0), std::invalid_argument);
}
