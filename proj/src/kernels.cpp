#include "domecast/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <omp.h>

namespace domecast::kernels {

namespace {

std::size_t block_count(std::size_t n) { return (n + kBlockSize - 1) / kBlockSize; }

// Depends on n only, so a given input is summed the same way on any machine.
bool use_parallel(std::size_t n) { return n >= kParallelThreshold; }

// Sums block partials in block order.
template <typename BlockFn>
double blocked_sum(std::size_t n, BlockFn&& block) {
  const std::size_t blocks = block_count(n);
  std::vector<double> partial(blocks, 0.0);
  const auto nb = static_cast<long long>(blocks);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlockSize;
    const std::size_t hi = std::min(n, lo + kBlockSize);
    partial[static_cast<std::size_t>(b)] = block(lo, hi);
  }
  CompensatedSum total;
  for (double p : partial) total.add(p);
  return total.value();
}

double regression_term(double t, double d, double x, const RegressionCoefficients& c) {
  const double a = c.alpha * std::exp(c.gamma_alpha * x);
  const double log_b = std::log(c.beta) + c.gamma_beta * x;
  const double b = std::exp(log_b);
  double term = (a + d) * std::log1p(t / b);
  if (d != 0.0) term += d * (log_b - std::log(a));
  return term;
}

double shape_term(double t, double x, double beta, double ga, double gb) {
  return std::exp(ga * x) * std::log1p(t * std::exp(-gb * x) / beta);
}

}  // namespace

LogTermSums log_term_sums_serial(std::span<const double> t, std::span<const double> event, double beta) {
  CompensatedSum all;
  CompensatedSum events;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double l = std::log1p(t[i] / beta);
    all.add(l);
    events.add(event[i] * l);
  }
  return {all.value(), events.value()};
}

LogTermSums log_term_sums_parallel(std::span<const double> t, std::span<const double> event, double beta) {
  const std::size_t blocks = block_count(t.size());
  std::vector<LogTermSums> partial(blocks);
  const auto nb = static_cast<long long>(blocks);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlockSize;
    const std::size_t hi = std::min(t.size(), lo + kBlockSize);
    partial[static_cast<std::size_t>(b)] =
        log_term_sums_serial(t.subspan(lo, hi - lo), event.subspan(lo, hi - lo), beta);
  }
  CompensatedSum all;
  CompensatedSum events;
  for (const auto& p : partial) {
    all.add(p.all);
    events.add(p.events);
  }
  return {all.value(), events.value()};
}

LogTermSums log_term_sums(std::span<const double> t, std::span<const double> event, double beta) {
  return use_parallel(t.size()) ? log_term_sums_parallel(t, event, beta) : log_term_sums_serial(t, event, beta);
}

double regression_nllh_serial(std::span<const double> t, std::span<const double> event,
                              std::span<const double> x, const RegressionCoefficients& c) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < t.size(); ++i) sum.add(regression_term(t[i], event[i], x[i], c));
  return sum.value();
}

double regression_nllh_parallel(std::span<const double> t, std::span<const double> event,
                                std::span<const double> x, const RegressionCoefficients& c) {
  return blocked_sum(t.size(), [&](std::size_t lo, std::size_t hi) {
    return regression_nllh_serial(t.subspan(lo, hi - lo), event.subspan(lo, hi - lo), x.subspan(lo, hi - lo), c);
  });
}

double regression_nllh(std::span<const double> t, std::span<const double> event, std::span<const double> x,
                       const RegressionCoefficients& c) {
  return use_parallel(t.size()) ? regression_nllh_parallel(t, event, x, c) : regression_nllh_serial(t, event, x, c);
}

double regression_shape_sum_serial(std::span<const double> t, std::span<const double> x, double beta,
                                   double gamma_alpha, double gamma_beta) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < t.size(); ++i) sum.add(shape_term(t[i], x[i], beta, gamma_alpha, gamma_beta));
  return sum.value();
}

double regression_shape_sum_parallel(std::span<const double> t, std::span<const double> x, double beta,
                                     double gamma_alpha, double gamma_beta) {
  return blocked_sum(t.size(), [&](std::size_t lo, std::size_t hi) {
    return regression_shape_sum_serial(t.subspan(lo, hi - lo), x.subspan(lo, hi - lo), beta, gamma_alpha,
                                       gamma_beta);
  });
}

double regression_shape_sum(std::span<const double> t, std::span<const double> x, double beta,
                            double gamma_alpha, double gamma_beta) {
  return use_parallel(t.size()) ? regression_shape_sum_parallel(t, x, beta, gamma_alpha, gamma_beta)
                                : regression_shape_sum_serial(t, x, beta, gamma_alpha, gamma_beta);
}

void draw_exceedance_serial(std::span<const double> shape, std::span<const double> scale, double age,
                            double horizon, std::span<double> out) {
  for (std::size_t j = 0; j < shape.size(); ++j) {
    out[j] = std::exp(-shape[j] * std::log1p(horizon / (scale[j] + age)));
  }
}

void draw_exceedance_parallel(std::span<const double> shape, std::span<const double> scale, double age,
                              double horizon, std::span<double> out) {
  const auto n = static_cast<long long>(shape.size());
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    out[k] = std::exp(-shape[k] * std::log1p(horizon / (scale[k] + age)));
  }
}

}  // namespace domecast::kernels
