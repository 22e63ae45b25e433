#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace renyi {

/// Two-pass arithmetic mean and (k-1)-divisor variance, folded in index order.
struct MeanVariance {
  double mean = 0.0;
  double variance = 0.0;
};

MeanVariance mean_variance(std::span<const double> values);

/// Running mean/variance (Welford). Deterministic for a fixed push order.
class RunningStats {
 public:
  void push(double x) noexcept {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }
  [[nodiscard]] std::size_t count() const noexcept { return count_; }
  [[nodiscard]] double mean() const noexcept { return mean_; }
  /// Divisor count - 1; zero for fewer than two observations.
  [[nodiscard]] double variance() const noexcept {
    return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
  }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// sup |F_n - F| for a sample (sorted internally) against a continuous CDF.
template <class Cdf>
double ks_statistic(std::vector<double> sample, Cdf&& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

/// Two-sample Kolmogorov-Smirnov distance sup |F_a - F_b|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic Kolmogorov critical value sqrt(-log(alpha/2)/2) / sqrt(m).
double ks_critical(double alpha, double m);

/// Critical value for the two-sample test with sizes n1, n2.
double ks_two_sample_critical(double alpha, std::size_t n1, std::size_t n2);

}  // namespace renyi
