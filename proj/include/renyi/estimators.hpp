#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "renyi/renyi.hpp"

namespace renyi {

enum class EstimatorMethod { hill, quantile, ml_uniform };
enum class IntervalMethod { spacing_variance, hill_self, quantile_h, none };

std::string_view to_string(EstimatorMethod m);
std::string_view to_string(IntervalMethod m);

/// Point estimate of gamma with an optional 1 - eps interval.
struct EstimateWithCI {
  double gamma_hat = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t k_used = 0;
  double level = 0.0;
  EstimatorMethod method = EstimatorMethod::hill;
  IntervalMethod interval_method = IntervalMethod::none;
};

/// Hill estimator in spacing form,
/// (1/k) sum_{j=1}^k j (log W_{n-j+1,n} - log W_{n-j,n}), W_{0,n} = C.
double hill(const HeavySample& h, std::size_t k);

/// Classical form (1/k) sum_{j=1}^k log W_{n+1-j,n} - log W_{n-k,n}.
double hill_log_average(const HeavySample& h, std::size_t k);

/// Hill estimates for every k = 1..n in O(n); element k-1 holds k.
std::vector<double> hill_path(const HeavySample& h);

/// ceil(n s), snapping to an integer when n s is within 1e-9 of one.
std::size_t upper_index(std::size_t n, double s);

enum class QuantileScale { log_scale, level };

/// Q^(1)(s) = X_{ceil(ns),n} or Q^(2)(s) = exp(Q^(1)(s)).
double empirical_quantile(const RenyiSample& r, double s, QuantileScale which);

/// X_{ceil(ns),n} / (-log(1 - s)).
double quantile_estimator(const RenyiSample& r, double s);

/// Asymptotic variance multiplier s / ((1 - s) log(1 - s)^2).
double h_function(double s);

struct HMinimum {
  double s0;
  double h_min;
};

/// Root of log(1/(1-s)) = 2s in (0, 1), found by bisection to 1e-12.
HMinimum h_minimizer();

/// Sample standard deviation (divisor k - 1) of the first k scaled
/// log-spacings. Throws DomainError for k < 2 or k > n.
double spacing_sigma(const HeavySample& h, std::size_t k);

/// spacing_sigma for every k = 1..n; element k-1 holds k, element 0 is NaN.
std::vector<double> spacing_sigma_path(const HeavySample& h);

/// gamma_hat +- sigma_hat x_eps / sqrt(k).
EstimateWithCI ci_spacing(double gamma_hat, double sigma_hat, std::size_t k, double eps);
/// gamma_hat +- gamma_hat x_eps / sqrt(k).
EstimateWithCI ci_hill_self(double gamma_hat, std::size_t k, double eps);
/// gamma_tilde +- sigma_hat sqrt(h(s)) x_eps / sqrt(n).
EstimateWithCI ci_quantile(double gamma_tilde, double sigma_hat, double s, std::size_t n,
                           double eps);

/// Uniform-spacing ML estimate: half the largest of the top k scaled
/// log-spacings.
double ml_uniform(const HeavySample& h, std::size_t k);

}  // namespace renyi
