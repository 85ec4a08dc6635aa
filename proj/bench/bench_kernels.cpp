#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "domecast/forecast.hpp"
#include "domecast/kernels.hpp"
#include "domecast/rng.hpp"

using namespace domecast;

namespace {

struct Data {
  std::vector<double> t, event, x;
};

const Data& data(std::size_t n) {
  static std::vector<std::pair<std::size_t, Data>> cache;
  for (const auto& [size, d] : cache) {
    if (size == n) return d;
  }
  Rng rng(1);
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    d.t.push_back(0.7 * (std::pow(rng.uniform(), -1.0 / 0.65) - 1.0));
    d.event.push_back(rng.uniform() < 0.92 ? 1.0 : 0.0);
    d.x.push_back(50.0 + 20.0 * rng.uniform() - 60.0);
  }
  cache.emplace_back(n, std::move(d));
  return cache.back().second;
}

PosteriorChain chain(std::size_t draws) {
  PosteriorChain c = PosteriorChain::point_mass(ModelKind::Aggregate, {0.65, 0.7});
  c.draws.clear();
  Rng rng(2);
  for (std::size_t i = 0; i < draws; ++i) {
    c.draws.push_back({0.65 * std::exp(0.05 * rng.normal()), 0.7 * std::exp(0.1 * rng.normal())});
  }
  return c;
}

const kernels::RegressionCoefficients kCoef{0.6923, 0.7915, 0.0447, 0.1302};

}  // namespace

static void BM_LogTermsSerial(benchmark::State& s) {
  const Data& d = data(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::log_term_sums_serial(d.t, d.event, 0.7));
  s.SetItemsProcessed(s.iterations() * s.range(0));
}
static void BM_LogTermsParallel(benchmark::State& s) {
  const Data& d = data(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::log_term_sums_parallel(d.t, d.event, 0.7));
  s.SetItemsProcessed(s.iterations() * s.range(0));
}
BENCHMARK(BM_LogTermsSerial)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20)->UseRealTime();
BENCHMARK(BM_LogTermsParallel)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20)->UseRealTime();

static void BM_RegressionNllhSerial(benchmark::State& s) {
  const Data& d = data(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::regression_nllh_serial(d.t, d.event, d.x, kCoef));
  s.SetItemsProcessed(s.iterations() * s.range(0));
}
static void BM_RegressionNllhParallel(benchmark::State& s) {
  const Data& d = data(static_cast<std::size_t>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::regression_nllh_parallel(d.t, d.event, d.x, kCoef));
  s.SetItemsProcessed(s.iterations() * s.range(0));
}
BENCHMARK(BM_RegressionNllhSerial)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20)->UseRealTime();
BENCHMARK(BM_RegressionNllhParallel)->Arg(1 << 14)->Arg(1 << 17)->Arg(1 << 20)->UseRealTime();

static void BM_CurveSerial(benchmark::State& s) {
  const PosteriorChain c = chain(static_cast<std::size_t>(s.range(0)));
  std::vector<double> grid(101);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 0.5 * static_cast<double>(i);
  for (auto _ : s) benchmark::DoNotOptimize(predictive_curve_serial(c, 19.68, std::nullopt, grid));
}
static void BM_CurveParallel(benchmark::State& s) {
  const PosteriorChain c = chain(static_cast<std::size_t>(s.range(0)));
  std::vector<double> grid(101);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 0.5 * static_cast<double>(i);
  for (auto _ : s) benchmark::DoNotOptimize(predictive_curve(c, 19.68, std::nullopt, grid));
}
BENCHMARK(BM_CurveSerial)->Arg(1000)->Arg(10000)->UseRealTime();
BENCHMARK(BM_CurveParallel)->Arg(1000)->Arg(10000)->UseRealTime();

BENCHMARK_MAIN();
