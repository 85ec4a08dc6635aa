#pragma once

#include <cstddef>
#include <span>

// Per-record likelihood sums and per-draw forecast evaluations. Each kernel
// has a serial reference and an OpenMP variant. The OpenMP variants split the
// input into fixed-size blocks, so their result does not depend on the number
// of threads; `*_auto` picks the parallel path for large inputs only.
namespace domecast::kernels {

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (abs_(sum_) >= abs_(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  static double abs_(double v) { return v < 0 ? -v : v; }
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline constexpr std::size_t kBlockSize = 2048;
inline constexpr std::size_t kParallelThreshold = 16384;

// L_i = log1p(t_i / beta). Returns (sum_i L_i, sum_i event_i * L_i).
struct LogTermSums {
  double all = 0.0;
  double events = 0.0;
};

LogTermSums log_term_sums_serial(std::span<const double> t, std::span<const double> event, double beta);
LogTermSums log_term_sums_parallel(std::span<const double> t, std::span<const double> event, double beta);
LogTermSums log_term_sums(std::span<const double> t, std::span<const double> event, double beta);

// Regression negative log-likelihood with x = silica - 60:
//   sum (a_i + d_i) log1p(t_i / b_i) + d_i log(b_i / a_i),
//   a_i = alpha e^{ga x_i}, b_i = beta e^{gb x_i}.
struct RegressionCoefficients {
  double alpha;
  double beta;
  double gamma_alpha;
  double gamma_beta;
};

double regression_nllh_serial(std::span<const double> t, std::span<const double> event,
                              std::span<const double> x, const RegressionCoefficients& c);
double regression_nllh_parallel(std::span<const double> t, std::span<const double> event,
                                std::span<const double> x, const RegressionCoefficients& c);
double regression_nllh(std::span<const double> t, std::span<const double> event, std::span<const double> x,
                       const RegressionCoefficients& c);

// sum e^{ga x_i} log1p(t_i e^{-gb x_i} / beta), the denominator of the
// conditional MLE of alpha in the regression model.
double regression_shape_sum_serial(std::span<const double> t, std::span<const double> x, double beta,
                                   double gamma_alpha, double gamma_beta);
double regression_shape_sum_parallel(std::span<const double> t, std::span<const double> x, double beta,
                                     double gamma_alpha, double gamma_beta);
double regression_shape_sum(std::span<const double> t, std::span<const double> x, double beta,
                            double gamma_alpha, double gamma_beta);

// out_j = (1 + horizon / (scale_j + age))^(-shape_j).
void draw_exceedance_serial(std::span<const double> shape, std::span<const double> scale, double age,
                            double horizon, std::span<double> out);
void draw_exceedance_parallel(std::span<const double> shape, std::span<const double> scale, double age,
                              double horizon, std::span<double> out);

}  // namespace domecast::kernels
