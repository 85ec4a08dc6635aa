#include "domecast/pareto.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace domecast {

namespace {

void require_age(double t, const char* what) {
  if (!(t >= 0.0)) throw std::invalid_argument(std::string(what) + " must be >= 0");
}

void require_probability(double q) {
  if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("probability must lie in [0, 1)");
}

void require_open_unit(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("uniform variate must lie in (0, 1)");
}

}  // namespace

GPaParams::GPaParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("GPa alpha must be > 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("GPa beta must be > 0");
}

ExpParams::ExpParams(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("exponential lambda must be > 0");
}

MeanDuration mean(const GPaParams& p) {
  if (p.alpha() <= 1.0) return {true, std::numeric_limits<double>::infinity()};
  return {false, p.beta() / (p.alpha() - 1.0)};
}

MeanDuration mean(const ExpParams& p) { return {false, 1.0 / p.lambda()}; }

double log_survival(const GPaParams& p, double t) {
  require_age(t, "duration");
  return -p.alpha() * std::log1p(t / p.beta());
}

double survival(const GPaParams& p, double t) { return std::exp(log_survival(p, t)); }

double log_density(const GPaParams& p, double t) {
  require_age(t, "duration");
  return std::log(p.alpha() / p.beta()) - (p.alpha() + 1.0) * std::log1p(t / p.beta());
}

double density(const GPaParams& p, double t) { return std::exp(log_density(p, t)); }

double quantile(const GPaParams& p, double q) {
  require_probability(q);
  // beta * ((1-q)^(-1/alpha) - 1)
  return p.beta() * std::expm1(-std::log1p(-q) / p.alpha());
}

double median(const GPaParams& p) { return quantile(p, 0.5); }

GPaParams condition_on_age(const GPaParams& p, double age) {
  require_age(age, "age");
  return GPaParams(p.alpha(), p.beta() + age);
}

double sample(const GPaParams& p, double u) {
  require_open_unit(u);
  return p.beta() * std::expm1(-std::log(u) / p.alpha());
}

double exp_survival(const ExpParams& p, double t) {
  require_age(t, "duration");
  return std::exp(-p.lambda() * t);
}

double exp_density(const ExpParams& p, double t) {
  require_age(t, "duration");
  return p.lambda() * std::exp(-p.lambda() * t);
}

double exp_quantile(const ExpParams& p, double q) {
  require_probability(q);
  return -std::log1p(-q) / p.lambda();
}

double exp_sample(const ExpParams& p, double u) {
  require_open_unit(u);
  return -std::log(u) / p.lambda();
}

double survival(const DurationModel& m, double t) {
  return std::visit(
      [t](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, GPaParams>) {
          return survival(p, t);
        } else {
          return exp_survival(p, t);
        }
      },
      m);
}

double quantile(const DurationModel& m, double q) {
  return std::visit(
      [q](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, GPaParams>) {
          return quantile(p, q);
        } else {
          return exp_quantile(p, q);
        }
      },
      m);
}

int parameter_count(const DurationModel& m) { return std::holds_alternative<GPaParams>(m) ? 2 : 1; }

}  // namespace domecast
