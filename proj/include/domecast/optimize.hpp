#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace domecast::optimize {

using ScalarFn = std::function<double(double)>;
using VectorFn = std::function<double(const std::vector<double>&)>;

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

// Golden-section search on [lo, hi]. Stops when the bracket width falls below
// rel_tol * max(1, |x|). The best point seen is returned, never a worse one.
ScalarMinimum golden_section(const ScalarFn& f, double lo, double hi, double rel_tol,
                             std::size_t max_iterations = 500);

// Grid scan of `grid_points` evenly spaced points followed by golden-section
// refinement around the best grid cell. The result is never worse than any
// grid point.
ScalarMinimum scan_and_refine(const ScalarFn& f, double lo, double hi, std::size_t grid_points, double rel_tol);

struct SimplexOptions {
  double initial_step = 0.5;
  double f_tol = 1e-10;   // relative spread of simplex values
  double x_tol = 1e-12;   // simplex diameter at which the search gives up
  std::size_t max_evaluations = 50000;
};

struct VectorMinimum {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
  std::size_t evaluations = 0;
};

// Nelder-Mead with standard coefficients (1, 2, 0.5, 0.5).
VectorMinimum nelder_mead(const VectorFn& f, std::vector<double> start, const SimplexOptions& options);

// Runs Nelder-Mead from `starts` plus `jittered` Gaussian perturbations of the
// first start (per-coordinate scales, seeded), polishes each with a restart at its own
// optimum, and keeps the best.
VectorMinimum multistart_nelder_mead(const VectorFn& f, const std::vector<std::vector<double>>& starts,
                                     std::size_t jittered, const std::vector<double>& jitter_scale, std::uint64_t seed,
                                     const SimplexOptions& options);

// Central-difference Hessian with step h_i = rel_step * max(1, |theta_i|).
std::vector<std::vector<double>> hessian(const VectorFn& f, const std::vector<double>& theta,
                                         double rel_step = 1e-4);

struct StandardErrors {
  std::optional<std::vector<double>> se;        // absent when the Hessian is not positive definite
  std::vector<std::vector<double>> covariance;  // inverse Hessian, when available
  std::string diagnostic;
};

// Square roots of the inverse-Hessian diagonal of a negative log-likelihood
// at its minimum, on whatever scale `f` is parameterized.
StandardErrors standard_errors(const VectorFn& f, const std::vector<double>& theta_hat, double rel_step = 1e-4);

}  // namespace domecast::optimize
