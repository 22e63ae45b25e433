#include "renyi/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "renyi/errors.hpp"
#include "renyi/format.hpp"
#include "renyi/special.hpp"

namespace renyi {
namespace {

void check_k(const HeavySample& h, std::size_t k, const char* who) {
  if (k < 1 || k > h.size()) {
    throw DomainError(std::string(who) + ": k = " + std::to_string(k) + " outside 1.." +
                      std::to_string(h.size()));
  }
}

void check_probability(double s, const char* who) {
  if (!(s > 0.0 && s < 1.0)) {
    throw DomainError(std::string(who) + ": value must lie in (0, 1), got " + format_real(s));
  }
}

double critical_value(double eps) {
  check_probability(eps, "confidence interval eps");
  return normal_quantile(1.0 - eps / 2.0);
}

}  // namespace

std::string_view to_string(EstimatorMethod m) {
  switch (m) {
    case EstimatorMethod::hill: return "hill";
    case EstimatorMethod::quantile: return "quantile";
    case EstimatorMethod::ml_uniform: return "ml_uniform";
  }
  return "?";
}

std::string_view to_string(IntervalMethod m) {
  switch (m) {
    case IntervalMethod::spacing_variance: return "spacing_variance";
    case IntervalMethod::hill_self: return "hill_self";
    case IntervalMethod::quantile_h: return "quantile_h";
    case IntervalMethod::none: return "none";
  }
  return "?";
}

double hill(const HeavySample& h, std::size_t k) {
  check_k(h, k, "hill");
  const std::size_t n = h.size();
  double sum = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    sum += static_cast<double>(j) * log_ratio(h.order_stat(n - j + 1), h.order_stat(n - j));
  }
  return sum / static_cast<double>(k);
}

double hill_log_average(const HeavySample& h, std::size_t k) {
  check_k(h, k, "hill_log_average");
  const std::size_t n = h.size();
  double sum = 0.0;
  for (std::size_t j = 1; j <= k; ++j) sum += std::log(h.order_stat(n + 1 - j));
  return sum / static_cast<double>(k) - std::log(h.order_stat(n - k));
}

std::vector<double> hill_path(const HeavySample& h) {
  const std::size_t n = h.size();
  std::vector<double> out(n);
  double sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    sum += static_cast<double>(k) * log_ratio(h.order_stat(n - k + 1), h.order_stat(n - k));
    out[k - 1] = sum / static_cast<double>(k);
  }
  return out;
}

std::size_t upper_index(std::size_t n, double s) {
  const double ns = static_cast<double>(n) * s;
  const double nearest = std::round(ns);
  if (std::abs(ns - nearest) <= 1e-9) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(ns));
}

double empirical_quantile(const RenyiSample& r, double s, QuantileScale which) {
  check_probability(s, "empirical_quantile s");
  const std::size_t idx = upper_index(r.size(), s);
  if (idx < 1) throw DomainError("empirical_quantile: ceil(n s) must be at least 1");
  const double q1 = r.x()[idx - 1];
  return which == QuantileScale::log_scale ? q1 : std::exp(q1);
}

double quantile_estimator(const RenyiSample& r, double s) {
  return empirical_quantile(r, s, QuantileScale::log_scale) / -std::log1p(-s);
}

double h_function(double s) {
  check_probability(s, "h_function s");
  const double l = std::log1p(-s);
  return s / ((1.0 - s) * l * l);
}

HMinimum h_minimizer() {
  // f(s) = -log(1 - s) - 2s is negative on (0, s0) and positive on (s0, 1);
  // s = 0 is the degenerate root.
  const auto f = [](double s) { return -std::log1p(-s) - 2.0 * s; };
  double lo = 0.5;
  double hi = 0.99;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  const double s0 = 0.5 * (lo + hi);
  return {s0, h_function(s0)};
}

double spacing_sigma(const HeavySample& h, std::size_t k) {
  if (k < 2) throw DomainError("spacing_sigma: need k >= 2 for an empirical variance");
  check_k(h, k, "spacing_sigma");
  const std::size_t n = h.size();
  // Welford over zhat_j = (n - j + 1) log(W_j / W_{j-1}), j = 1..k.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    const double zhat =
        static_cast<double>(n - j + 1) * log_ratio(h.order_stat(j), h.order_stat(j - 1));
    const double delta = zhat - mean;
    mean += delta / static_cast<double>(j);
    m2 += delta * (zhat - mean);
  }
  return std::sqrt(m2 / static_cast<double>(k - 1));
}

std::vector<double> spacing_sigma_path(const HeavySample& h) {
  const std::size_t n = h.size();
  std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double zhat =
        static_cast<double>(n - j + 1) * log_ratio(h.order_stat(j), h.order_stat(j - 1));
    const double delta = zhat - mean;
    mean += delta / static_cast<double>(j);
    m2 += delta * (zhat - mean);
    if (j >= 2) out[j - 1] = std::sqrt(m2 / static_cast<double>(j - 1));
  }
  return out;
}

EstimateWithCI ci_spacing(double gamma_hat, double sigma_hat, std::size_t k, double eps) {
  if (k < 1) throw DomainError("ci_spacing: k must be positive");
  if (!(sigma_hat >= 0.0)) throw DomainError("ci_spacing: sigma_hat must be nonnegative");
  const double half = sigma_hat * critical_value(eps) / std::sqrt(static_cast<double>(k));
  return {gamma_hat, gamma_hat - half, gamma_hat + half, k, 1.0 - eps,
          EstimatorMethod::hill, IntervalMethod::spacing_variance};
}

EstimateWithCI ci_hill_self(double gamma_hat, std::size_t k, double eps) {
  if (k < 1) throw DomainError("ci_hill_self: k must be positive");
  const double half = std::abs(gamma_hat) * critical_value(eps) / std::sqrt(static_cast<double>(k));
  return {gamma_hat, gamma_hat - half, gamma_hat + half, k, 1.0 - eps,
          EstimatorMethod::hill, IntervalMethod::hill_self};
}

EstimateWithCI ci_quantile(double gamma_tilde, double sigma_hat, double s, std::size_t n,
                           double eps) {
  if (n < 1) throw DomainError("ci_quantile: n must be positive");
  if (!(sigma_hat >= 0.0)) throw DomainError("ci_quantile: sigma_hat must be nonnegative");
  const double half = sigma_hat * std::sqrt(h_function(s)) * critical_value(eps) /
                      std::sqrt(static_cast<double>(n));
  return {gamma_tilde, gamma_tilde - half, gamma_tilde + half, upper_index(n, s), 1.0 - eps,
          EstimatorMethod::quantile, IntervalMethod::quantile_h};
}

double ml_uniform(const HeavySample& h, std::size_t k) {
  check_k(h, k, "ml_uniform");
  const std::size_t n = h.size();
  double best = 0.0;
  for (std::size_t j = n - k + 1; j <= n; ++j) {
    best = std::max(best, static_cast<double>(n - j + 1) *
                              log_ratio(h.order_stat(j), h.order_stat(j - 1)));
  }
  return 0.5 * best;
}

}  // namespace renyi
