#pragma once

#include <span>
#include <vector>

namespace domecast::stats {

double mean(std::span<const double> v);
// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sd(std::span<const double> v);
// Linear-interpolation quantile (Hyndman-Fan type 7) of unsorted data.
double quantile(std::span<const double> v, double p);
double quantile_sorted(std::span<const double> sorted, double p);
double lag1_autocorrelation(std::span<const double> v);

}  // namespace domecast::stats
