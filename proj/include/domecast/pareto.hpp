#pragma once

#include <variant>

namespace domecast {

// Generalized Pareto GPa(alpha, beta): survival (1 + t/beta)^(-alpha) on t > 0.
// Both parameters are checked once, at construction.
class GPaParams {
 public:
  GPaParams(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  friend bool operator==(const GPaParams&, const GPaParams&) = default;

 private:
  double alpha_;
  double beta_;
};

// Exponential Ex(lambda), the large-alpha limit of GPa with alpha/beta -> lambda.
class ExpParams {
 public:
  explicit ExpParams(double lambda);

  double lambda() const { return lambda_; }

  friend bool operator==(const ExpParams&, const ExpParams&) = default;

 private:
  double lambda_;
};

// Mean duration. Heavy tails (alpha <= 1) have no finite mean; that is
// reported through `infinite`, never through an overflowed value.
struct MeanDuration {
  bool infinite = false;
  double years = 0.0;
};

MeanDuration mean(const GPaParams& p);
MeanDuration mean(const ExpParams& p);

double log_survival(const GPaParams& p, double t);
double survival(const GPaParams& p, double t);
double log_density(const GPaParams& p, double t);
double density(const GPaParams& p, double t);
double quantile(const GPaParams& p, double q);
double median(const GPaParams& p);

// Remaining-duration law of an eruption that has already lasted `age` years.
GPaParams condition_on_age(const GPaParams& p, double age);

// Inverse-CDF transform of a Uniform(0,1) variate.
double sample(const GPaParams& p, double u);

double exp_survival(const ExpParams& p, double t);
double exp_density(const ExpParams& p, double t);
double exp_quantile(const ExpParams& p, double q);
double exp_sample(const ExpParams& p, double u);

// Either fitted duration law, for code that only needs survival/quantiles.
using DurationModel = std::variant<GPaParams, ExpParams>;

double survival(const DurationModel& m, double t);
double quantile(const DurationModel& m, double q);
int parameter_count(const DurationModel& m);

}  // namespace domecast
