#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "domecast/catalog.hpp"
#include "domecast/pareto.hpp"

namespace domecast {

inline constexpr std::size_t kDefaultGofBins = 13;

struct GofReport {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  std::size_t n_bins = 0;
  std::vector<double> bin_edges;  // interior edges, ascending
  std::vector<std::size_t> observed;
  std::vector<double> expected;
  std::vector<std::string> warnings;
};

// Interior edges at the model quantiles j/n_bins, j = 1..n_bins-1.
std::vector<double> equiprobable_bins(const DurationModel& model, std::size_t n_bins);

// sum (O - E)^2 / E
double chisq_statistic(std::span<const std::size_t> observed, std::span<const double> expected);

// Upper tail of the chi-square distribution, Q(dof/2, x/2).
double chisq_tail(double x, int dof);

// Regularized upper incomplete gamma Q(a, x) for a > 0, x >= 0.
double regularized_gamma_q(double a, double x);

// Chi-square test of completed durations against a fitted model with
// `k_fitted` estimated parameters. Equiprobable bins, dof = n_bins - 1 - k_fitted.
GofReport gof_test(std::span<const double> durations, const DurationModel& model, int k_fitted,
                   std::size_t n_bins = kDefaultGofBins);

// Same test on a catalog; throws DataError if any record is still ongoing.
GofReport gof_test(const Catalog& completed, const DurationModel& model, int k_fitted,
                   std::size_t n_bins = kDefaultGofBins);

}  // namespace domecast
