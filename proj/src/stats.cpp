#include "domecast/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "domecast/kernels.hpp"

namespace domecast::stats {

double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean of an empty sample");
  kernels::CompensatedSum s;
  for (double x : v) s.add(x);
  return s.value() / static_cast<double>(v.size());
}

double sd(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  kernels::CompensatedSum s;
  for (double x : v) s.add((x - m) * (x - m));
  return std::sqrt(s.value() / static_cast<double>(v.size() - 1));
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile level must be in [0, 1]");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double quantile(std::span<const double> v, double p) {
  std::vector<double> copy(v.begin(), v.end());
  std::sort(copy.begin(), copy.end());
  return quantile_sorted(copy, p);
}

double lag1_autocorrelation(std::span<const double> v) {
  if (v.size() < 3) throw std::invalid_argument("autocorrelation needs at least 3 values");
  const double m = mean(v);
  kernels::CompensatedSum num;
  kernels::CompensatedSum den;
  for (std::size_t i = 0; i < v.size(); ++i) {
    den.add((v[i] - m) * (v[i] - m));
    if (i + 1 < v.size()) num.add((v[i] - m) * (v[i + 1] - m));
  }
  if (den.value() == 0.0) return 0.0;
  return num.value() / den.value();
}

}  // namespace domecast::stats
