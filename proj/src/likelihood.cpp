#include "renyi/likelihood.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "renyi/errors.hpp"
#include "renyi/estimators.hpp"

namespace renyi {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

DensityModel::DensityModel(DistributionSpec spec) : spec_(std::move(spec)) {
  if (!spec_.is_absolutely_continuous()) {
    throw ParameterError("DensityModel: " + spec_.to_string() +
                         " is not absolutely continuous");
  }
  if (!spec_.is_spacing_law()) {
    throw ParameterError("DensityModel: " + spec_.to_string() + " is not a spacing law");
  }
}

double DensityModel::log_density(double x) const {
  const auto& kind = spec_.kind();
  if (const auto* e = std::get_if<Exponential>(&kind)) {
    return x < 0.0 ? kNegInf : -std::log(e->gamma) - x / e->gamma;
  }
  if (const auto* u = std::get_if<UniformSpacing>(&kind)) {
    // Closed support, so the uniform ML estimate is attained.
    return (x < 0.0 || x > 2.0 * u->gamma) ? kNegInf : -std::log(2.0 * u->gamma);
  }
  const auto& g = std::get<GammaSpacing>(kind);
  if (x < 0.0) return kNegInf;
  const double rate = g.shape / g.gamma;
  if (x == 0.0) {
    if (g.shape == 1.0) return std::log(rate);
    return g.shape < 1.0 ? std::numeric_limits<double>::infinity() : kNegInf;
  }
  return g.shape * std::log(rate) - std::lgamma(g.shape) + (g.shape - 1.0) * std::log(x) -
         rate * x;
}

double DensityModel::density(double x) const { return std::exp(log_density(x)); }

double log_ordered_density(const DensityModel& model, std::size_t n, std::span<const double> y) {
  if (y.empty() || y.size() > n) throw DomainError("ordered_density: need 1 <= k <= n");
  for (const double v : y) {
    if (std::isnan(v) || v < 0.0) throw DomainError("ordered_density: NaN or negative input");
  }
  double total = 0.0;
  double previous = 0.0;
  for (std::size_t j = 1; j <= y.size(); ++j) {
    const double current = y[j - 1];
    if (!(current > previous)) return kNegInf;
    const double factor = static_cast<double>(n - j + 1);
    total += std::log(factor) + model.log_density(factor * (current - previous));
    previous = current;
  }
  return total;
}

double ordered_density(const DensityModel& model, std::size_t n, std::span<const double> y) {
  return std::exp(log_ordered_density(model, n, y));
}

double log_permuted_density(const DensityModel& model, std::span<const double> y) {
  if (y.empty()) throw DomainError("permuted_density: empty input");
  std::vector<double> sorted(y.begin(), y.end());
  for (const double v : sorted) {
    if (std::isnan(v)) throw DomainError("permuted_density: NaN input");
    if (v < 0.0) return kNegInf;
  }
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  double total = 0.0;
  double previous = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    total += model.log_density(static_cast<double>(n - j + 1) * (sorted[j - 1] - previous));
    previous = sorted[j - 1];
  }
  return total;
}

double permuted_density(const DensityModel& model, std::span<const double> y) {
  return std::exp(log_permuted_density(model, y));
}

double conditional_log_likelihood(const DensityModel& model, std::span<const double> block,
                                  std::size_t n) {
  if (block.size() < 2) throw DomainError("conditional_log_likelihood: block needs k + 1 >= 2 values");
  const std::size_t k = block.size() - 1;
  if (k > n) throw DomainError("conditional_log_likelihood: k exceeds n");
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (!(block[i] > 0.0) || !std::isfinite(block[i])) {
      throw DomainError("conditional_log_likelihood: values must be finite and positive");
    }
    if (i > 0 && block[i] < block[i - 1]) {
      throw DomainError("conditional_log_likelihood: block is not nondecreasing");
    }
  }
  double total = std::lgamma(static_cast<double>(k) + 1.0);
  // block[i] holds w_{n-k+i}; the factor for j = n-k+i is n - j + 1 = k - i + 1.
  for (std::size_t i = 1; i <= k; ++i) {
    const double factor = static_cast<double>(k - i + 1);
    const double lg = model.log_density(factor * log_ratio(block[i], block[i - 1]));
    if (lg == kNegInf) return kNegInf;
    total += lg - std::log(block[i]);
  }
  return total;
}

double conditional_log_likelihood(const DensityModel& model, const HeavySample& h, std::size_t k) {
  const std::size_t n = h.size();
  if (k < 1 || k > n) throw DomainError("conditional_log_likelihood: k outside 1..n");
  std::vector<double> block(k + 1);
  for (std::size_t i = 0; i <= k; ++i) block[i] = h.order_stat(n - k + i);
  return conditional_log_likelihood(model, block, n);
}

FamilyTag FamilyTag::parse(std::string_view name, double shape) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "exponential" || lower == "exp") return {MlFamily::exponential, 1.0};
  if (lower == "uniform" || lower == "unif") return {MlFamily::uniform, 1.0};
  if (lower == "gamma") {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
      throw ParameterError("gamma family needs a positive shape r");
    }
    return {MlFamily::gamma_fixed_shape, shape};
  }
  throw ParameterError("unknown family '" + std::string(name) + "'");
}

DistributionSpec FamilyTag::member(double gamma) const {
  switch (family) {
    case MlFamily::exponential: return DistributionSpec::exponential(gamma);
    case MlFamily::uniform: return DistributionSpec::uniform(gamma);
    case MlFamily::gamma_fixed_shape: return DistributionSpec::gamma_law(shape, gamma);
  }
  throw ParameterError("unknown family");
}

double ml_fit(const FamilyTag& family, const HeavySample& h, std::size_t k) {
  switch (family.family) {
    case MlFamily::exponential:
    case MlFamily::gamma_fixed_shape:
      // Both log-likelihoods are maximized at the mean of the top-k spacings.
      return hill(h, k);
    case MlFamily::uniform:
      return ml_uniform(h, k);
  }
  throw ParameterError("unknown family");
}

}  // namespace renyi
