#include <doctest.h>

#include <stdexcept>

#include <omp.h>

#include <cmath>
#include <vector>

#include "domecast/kernels.hpp"
#include "domecast/rng.hpp"

using namespace domecast;
using namespace domecast::kernels;

namespace {

struct Sample {
  std::vector<double> t, event, x;
};

Sample make_sample(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Sample s;
  for (std::size_t i = 0; i < n; ++i) {
    s.t.push_back(-std::log(rng.uniform()) * 3.0);
    s.event.push_back(rng.uniform() < 0.9 ? 1.0 : 0.0);
    s.x.push_back(50.0 + 20.0 * rng.uniform() - 60.0);
  }
  return s;
}

template <class F>
auto with_threads(int threads, F f) {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(threads);
  auto r = f();
  omp_set_num_threads(saved);
  return r;
}

}  // namespace

TEST_CASE("compensated sum recovers cancellation") {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
}

TEST_CASE("serial and parallel log-term sums agree to rounding") {
  for (std::size_t n : {1ul, 2047ul, 2048ul, 2049ul, 20000ul, 100003ul}) {
    const Sample s = make_sample(n, n);
    const auto a = log_term_sums_serial(s.t, s.event, 0.7);
    const auto b = log_term_sums_parallel(s.t, s.event, 0.7);
    CHECK(a.all == doctest::Approx(b.all).epsilon(1e-14));
    CHECK(a.events == doctest::Approx(b.events).epsilon(1e-14));
  }
}

TEST_CASE("parallel results do not depend on the thread count") {
  const Sample s = make_sample(70000, 5);
  const RegressionCoefficients c{0.65, 0.7, 0.04, 0.13};
  const double r1 = with_threads(1, [&] { return regression_nllh_parallel(s.t, s.event, s.x, c); });
  const double r3 = with_threads(3, [&] { return regression_nllh_parallel(s.t, s.event, s.x, c); });
  const double r8 = with_threads(8, [&] { return regression_nllh_parallel(s.t, s.event, s.x, c); });
  CHECK(r1 == r3);
  CHECK(r1 == r8);
  CHECK(r1 == doctest::Approx(regression_nllh_serial(s.t, s.event, s.x, c)).epsilon(1e-14));
  CHECK(r1 == regression_nllh(s.t, s.event, s.x, c));
  const double q1 = with_threads(1, [&] { return regression_shape_sum_parallel(s.t, s.x, 0.7, 0.04, 0.13); });
  const double q4 = with_threads(4, [&] { return regression_shape_sum_parallel(s.t, s.x, 0.7, 0.04, 0.13); });
  CHECK(q1 == q4);
  CHECK(q1 == doctest::Approx(regression_shape_sum_serial(s.t, s.x, 0.7, 0.04, 0.13)).epsilon(1e-14));
}

TEST_CASE("draw exceedance kernels agree") {
  Rng rng(3);
  std::vector<double> shape(5000), scale(5000);
  for (std::size_t i = 0; i < shape.size(); ++i) {
    shape[i] = 0.3 + rng.uniform();
    scale[i] = 0.2 + 2.0 * rng.uniform();
  }
  std::vector<double> a(shape.size()), b(shape.size());
  draw_exceedance_serial(shape, scale, 1.49, 10.0, a);
  draw_exceedance_parallel(shape, scale, 1.49, 10.0, b);
  CHECK(a == b);
  CHECK(a[0] == doctest::Approx(std::pow(1.0 + 10.0 / (scale[0] + 1.49), -shape[0])));
}

TEST_CASE("regression NLLH kernel matches a naive loop") {
  const Sample s = make_sample(500, 9);
  const RegressionCoefficients c{0.65, 0.7, 0.04, 0.13};
  double naive = 0.0;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    const double a = c.alpha * std::exp(c.gamma_alpha * s.x[i]);
    const double b = c.beta * std::exp(c.gamma_beta * s.x[i]);
    naive += (a + s.event[i]) * std::log1p(s.t[i] / b) - s.event[i] * std::log(a / b);
  }
  CHECK(regression_nllh(s.t, s.event, s.x, c) == doctest::Approx(naive).epsilon(1e-12));
}
