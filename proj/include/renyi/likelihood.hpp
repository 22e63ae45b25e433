#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "renyi/distribution.hpp"
#include "renyi/renyi.hpp"

namespace renyi {

/// A spacing law with a density g. Only exponential, uniform and gamma laws
/// qualify; anything else throws ParameterError at construction.
class DensityModel {
 public:
  explicit DensityModel(DistributionSpec spec);

  /// log g(x); -infinity outside the support.
  [[nodiscard]] double log_density(double x) const;
  [[nodiscard]] double density(double x) const;
  [[nodiscard]] const DistributionSpec& spec() const noexcept { return spec_; }

 private:
  DistributionSpec spec_;
};

/// log of the joint density of (X_{1,n}, ..., X_{k,n}),
/// sum_j log((n-j+1) g((n-j+1)(y_j - y_{j-1}))), y_0 = 0. Returns -infinity
/// off the ordered cone 0 < y_1 < ... < y_k. Throws DomainError for NaN or
/// negative coordinates, empty y, or k > n.
double log_ordered_density(const DensityModel& model, std::size_t n, std::span<const double> y);
double ordered_density(const DensityModel& model, std::size_t n, std::span<const double> y);

/// log of the joint density of a uniformly permuted sample,
/// prod_j g((n-j+1)(y_(j) - y_(j-1))) over the sorted coordinates. Negative
/// coordinates are off-support (-infinity), not an error.
double log_permuted_density(const DensityModel& model, std::span<const double> y);
double permuted_density(const DensityModel& model, std::span<const double> y);

/// log h(w_{n-k+1}, ..., w_n | w_{n-k}) for the top block
/// block = (w_{n-k}, w_{n-k+1}, ..., w_n) of length k + 1:
///   log k! + sum_j [log g((n-j+1) log(w_j / w_{j-1})) - log w_j].
/// When k = n the first element is the scale C. Returns -infinity when a
/// spacing leaves the support of g; throws DomainError on a decreasing block.
double conditional_log_likelihood(const DensityModel& model, std::span<const double> block,
                                  std::size_t n);

/// Same, taking the block from a sample: k top order statistics conditioned
/// on W_{n-k,n} (or C when k = n).
double conditional_log_likelihood(const DensityModel& model, const HeavySample& h, std::size_t k);

enum class MlFamily { exponential, gamma_fixed_shape, uniform };

struct FamilyTag {
  MlFamily family = MlFamily::exponential;
  double shape = 1.0;  ///< r, used by gamma_fixed_shape only

  /// "exponential", "uniform" or "gamma" (with shape).
  static FamilyTag parse(std::string_view name, double shape = 1.0);
  /// The family member with mean gamma.
  [[nodiscard]] DistributionSpec member(double gamma) const;
};

/// Maximum likelihood estimate of gamma from the top k order statistics.
double ml_fit(const FamilyTag& family, const HeavySample& h, std::size_t k);

}  // namespace renyi
