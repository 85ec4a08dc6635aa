#include "domecast/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "domecast/error.hpp"
#include "domecast/kernels.hpp"

namespace domecast {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxTerms = 100000;

double log_prefactor(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

// P(a, x) by its power series; suited to x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxTerms; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(log_prefactor(a, x));
}

// Q(a, x) by its continued fraction (modified Lentz); suited to x >= a + 1.
double gamma_q_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(log_prefactor(a, x)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("incomplete gamma needs a > 0");
  if (!(x >= 0.0)) throw std::invalid_argument("incomplete gamma needs x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double chisq_tail(double x, int dof) {
  if (dof < 1) throw std::invalid_argument("chi-square needs dof >= 1");
  if (!(x >= 0.0)) throw std::invalid_argument("chi-square statistic must be >= 0");
  return regularized_gamma_q(0.5 * dof, 0.5 * x);
}

std::vector<double> equiprobable_bins(const DurationModel& model, std::size_t n_bins) {
  if (n_bins < 2) throw std::invalid_argument("equiprobable binning needs at least 2 bins");
  std::vector<double> edges;
  edges.reserve(n_bins - 1);
  for (std::size_t j = 1; j < n_bins; ++j) {
    edges.push_back(quantile(model, static_cast<double>(j) / static_cast<double>(n_bins)));
  }
  return edges;
}

double chisq_statistic(std::span<const std::size_t> observed, std::span<const double> expected) {
  if (observed.size() != expected.size()) throw std::invalid_argument("observed/expected length mismatch");
  kernels::CompensatedSum sum;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) throw std::invalid_argument("expected count must be > 0 in every bin");
    const double diff = static_cast<double>(observed[i]) - expected[i];
    sum.add(diff * diff / expected[i]);
  }
  return sum.value();
}

GofReport gof_test(std::span<const double> durations, const DurationModel& model, int k_fitted, std::size_t n_bins) {
  if (durations.empty()) throw DataError("goodness-of-fit test needs at least one completed duration");
  const long dof = static_cast<long>(n_bins) - 1 - k_fitted;
  if (dof < 1) {
    throw std::invalid_argument("goodness-of-fit test with " + std::to_string(n_bins) + " bins and " +
                                std::to_string(k_fitted) + " fitted parameters has no degrees of freedom");
  }

  GofReport report;
  report.n_bins = n_bins;
  report.dof = static_cast<int>(dof);
  report.bin_edges = equiprobable_bins(model, n_bins);
  report.observed.assign(n_bins, 0);
  for (double t : durations) {
    if (!(t >= 0.0)) throw DataError("durations must be non-negative");
    const auto bin = std::upper_bound(report.bin_edges.begin(), report.bin_edges.end(), t) - report.bin_edges.begin();
    ++report.observed[static_cast<std::size_t>(bin)];
  }
  const double per_bin = static_cast<double>(durations.size()) / static_cast<double>(n_bins);
  report.expected.assign(n_bins, per_bin);
  if (per_bin < 5.0) {
    report.warnings.push_back("expected count per bin is below 5; the chi-square approximation may be poor");
  }
  report.statistic = chisq_statistic(report.observed, report.expected);
  report.p_value = chisq_tail(report.statistic, report.dof);
  return report;
}

GofReport gof_test(const Catalog& completed, const DurationModel& model, int k_fitted, std::size_t n_bins) {
  std::vector<double> durations;
  durations.reserve(completed.size());
  for (const auto& r : completed.records()) {
    if (r.censored) {
      throw DataError("goodness-of-fit test applies to completed eruptions only; '" + r.volcano_name +
                      "' is ongoing");
    }
    durations.push_back(r.duration);
  }
  return gof_test(durations, model, k_fitted, n_bins);
}

}  // namespace domecast
