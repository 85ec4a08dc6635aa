#include "domecast/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "domecast/rng.hpp"

namespace domecast::optimize {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2

double finite_or_inf(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

}  // namespace

ScalarMinimum golden_section(const ScalarFn& f, double lo, double hi, double rel_tol, std::size_t max_iterations) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = finite_or_inf(f(c));
  double fd = finite_or_inf(f(d));

  ScalarMinimum best{fc <= fd ? c : d, std::min(fc, fd), false, 0};
  for (std::size_t it = 0; it < max_iterations; ++it) {
    best.iterations = it + 1;
    if (b - a <= rel_tol * std::max(1.0, std::abs(best.x))) {
      best.converged = true;
      break;
    }
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = finite_or_inf(f(c));
      if (fc < best.value) best = {c, fc, false, best.iterations};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = finite_or_inf(f(d));
      if (fd < best.value) best = {d, fd, false, best.iterations};
    }
  }
  return best;
}

ScalarMinimum scan_and_refine(const ScalarFn& f, double lo, double hi, std::size_t grid_points, double rel_tol) {
  grid_points = std::max<std::size_t>(grid_points, 3);
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  std::size_t best_i = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double v = finite_or_inf(f(lo + step * static_cast<double>(i)));
    if (v < best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double a = lo + step * static_cast<double>(best_i == 0 ? 0 : best_i - 1);
  const double b = lo + step * static_cast<double>(std::min(best_i + 1, grid_points - 1));
  ScalarMinimum refined = golden_section(f, a, b, rel_tol);
  if (!(refined.value <= best_v)) {
    refined.x = lo + step * static_cast<double>(best_i);
    refined.value = best_v;
  }
  refined.iterations += grid_points;
  return refined;
}

VectorMinimum nelder_mead(const VectorFn& f, std::vector<double> start, const SimplexOptions& options) {
  const std::size_t dim = start.size();
  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += options.initial_step;

  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return finite_or_inf(f(x));
  };
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  bool converged = false;
  std::vector<double> centroid(dim), trial(dim), trial2(dim);

  auto along = [&](double coef, const std::vector<double>& worst, std::vector<double>& out) {
    for (std::size_t j = 0; j < dim; ++j) out[j] = centroid[j] + coef * (worst[j] - centroid[j]);
  };

  while (evals < options.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) diameter = std::max(diameter, std::abs(simplex[i][j] - simplex[best][j]));
    }
    const double spread = values[worst] - values[best];
    if (std::isfinite(spread) && spread <= options.f_tol * (std::abs(values[best]) + options.f_tol)) {
      converged = true;
      break;
    }
    if (diameter <= options.x_tol) {
      // Collapsed simplex: no further progress is possible from here.
      converged = std::isfinite(values[best]);
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / static_cast<double>(dim);
    }

    along(-1.0, simplex[worst], trial);
    const double fr = eval(trial);
    if (fr < values[best]) {
      along(-2.0, simplex[worst], trial2);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
    } else if (fr < values[second_worst]) {
      simplex[worst] = trial;
      values[worst] = fr;
    } else {
      const bool outside = fr < values[worst];
      along(outside ? -0.5 : 0.5, simplex[worst], trial2);
      const double fc = eval(trial2);
      if (fc < (outside ? fr : values[worst])) {
        simplex[worst] = trial2;
        values[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= dim; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < dim; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
          values[i] = eval(simplex[i]);
        }
      }
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best_index = static_cast<std::size_t>(best_it - values.begin());
  return {simplex[best_index], *best_it, converged, evals};
}

VectorMinimum multistart_nelder_mead(const VectorFn& f, const std::vector<std::vector<double>>& starts,
                                     std::size_t jittered, const std::vector<double>& jitter_scale, std::uint64_t seed,
                                     const SimplexOptions& options) {
  std::vector<std::vector<double>> all_starts = starts;
  Rng rng(seed);
  for (std::size_t r = 0; r < jittered && !starts.empty(); ++r) {
    std::vector<double> s = starts.front();
    for (std::size_t j = 0; j < s.size(); ++j) s[j] += jitter_scale[j] * rng.normal();
    all_starts.push_back(std::move(s));
  }

  VectorMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  std::size_t total_evals = 0;
  for (const auto& s : all_starts) {
    VectorMinimum run = nelder_mead(f, s, options);
    total_evals += run.evaluations;
    // Restart from the optimum with a fresh simplex until it stops improving.
    for (int polish = 0; polish < 5; ++polish) {
      SimplexOptions small = options;
      small.initial_step = options.initial_step * 0.1;
      VectorMinimum again = nelder_mead(f, run.x, small);
      total_evals += again.evaluations;
      const bool improved = again.value < run.value - options.f_tol * (std::abs(run.value) + options.f_tol);
      if (again.value <= run.value) run = again;
      if (!improved) break;
    }
    if (run.value < best.value) best = run;
  }
  best.evaluations = total_evals;
  return best;
}

std::vector<std::vector<double>> hessian(const VectorFn& f, const std::vector<double>& theta, double rel_step) {
  const std::size_t dim = theta.size();
  std::vector<double> h(dim);
  for (std::size_t i = 0; i < dim; ++i) h[i] = rel_step * std::max(1.0, std::abs(theta[i]));

  std::vector<std::vector<double>> out(dim, std::vector<double>(dim, 0.0));
  const double f0 = f(theta);
  std::vector<double> x = theta;
  for (std::size_t i = 0; i < dim; ++i) {
    x[i] = theta[i] + h[i];
    const double fp = f(x);
    x[i] = theta[i] - h[i];
    const double fm = f(x);
    x[i] = theta[i];
    out[i][i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      auto at = [&](double si, double sj) {
        x[i] = theta[i] + si * h[i];
        x[j] = theta[j] + sj * h[j];
        const double v = f(x);
        x[i] = theta[i];
        x[j] = theta[j];
        return v;
      };
      const double v = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h[i] * h[j]);
      out[i][j] = v;
      out[j][i] = v;
    }
  }
  return out;
}

StandardErrors standard_errors(const VectorFn& f, const std::vector<double>& theta_hat, double rel_step) {
  const auto H = hessian(f, theta_hat, rel_step);
  const auto dim = static_cast<Eigen::Index>(theta_hat.size());
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  StandardErrors result;
  if (!m.allFinite()) {
    result.diagnostic = "Hessian has non-finite entries";
    return result;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    result.diagnostic = "Hessian is not positive definite; standard errors undefined";
    return result;
  }
  const Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(dim, dim));
  std::vector<double> se(theta_hat.size());
  result.covariance.assign(theta_hat.size(), std::vector<double>(theta_hat.size()));
  for (Eigen::Index i = 0; i < dim; ++i) {
    se[static_cast<std::size_t>(i)] = std::sqrt(cov(i, i));
    for (Eigen::Index j = 0; j < dim; ++j) {
      result.covariance[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cov(i, j);
    }
  }
  result.se = std::move(se);
  return result;
}

}  // namespace domecast::optimize
