#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "renyi/rng.hpp"

namespace renyi {

// Spacing laws (nonnegative, mean gamma).
struct Exponential {
  double gamma;
};
/// Uniform on (0, 2*gamma).
struct UniformSpacing {
  double gamma;
};
/// Bernoulli with success probability gamma.
struct Bernoulli {
  double gamma;
};
/// Gamma with shape r and rate r/gamma.
struct GammaSpacing {
  double shape;
  double gamma;
};

// Classical iid comparison laws for the observations themselves.
/// P(X > x) = (scale/x)^(1/gamma), x >= scale.
struct StrictPareto {
  double gamma;
  double scale;
};
/// Hall-class perturbation of Pareto, Q(1-u) = u^(-1/2) (1 + u/2).
struct HallPerturbedPareto {};

/// A validated probability law. Text form: `exp:gamma=0.5`, `unif:gamma=0.5`,
/// `bern:gamma=0.5`, `gamma:r=2,gamma=0.5`, `pareto:gamma=0.5,c=1`, `hall`.
class DistributionSpec {
 public:
  using Kind = std::variant<Exponential, UniformSpacing, Bernoulli, GammaSpacing,
                            StrictPareto, HallPerturbedPareto>;

  static DistributionSpec exponential(double gamma);
  static DistributionSpec uniform(double gamma);
  static DistributionSpec bernoulli(double gamma);
  static DistributionSpec gamma_law(double shape, double gamma);
  static DistributionSpec strict_pareto(double gamma, double scale = 1.0);
  static DistributionSpec hall();

  /// Parses the canonical text form; case-insensitive. A missing gamma
  /// defaults to 0.5 and a missing Pareto scale to 1. Throws ParameterError.
  static DistributionSpec parse(std::string_view text);

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] std::string_view kind_name() const;
  [[nodiscard]] const Kind& kind() const noexcept { return kind_; }

  /// Mean for spacing laws; extreme value index for the iid laws.
  [[nodiscard]] double gamma() const noexcept;
  [[nodiscard]] bool is_spacing_law() const noexcept;
  [[nodiscard]] bool is_absolutely_continuous() const noexcept;
  /// Left endpoint of the support.
  [[nodiscard]] double lower_endpoint() const noexcept;

  friend bool operator==(const DistributionSpec& a, const DistributionSpec& b) {
    return a.to_string() == b.to_string();
  }

 private:
  explicit DistributionSpec(Kind kind) : kind_(kind) {}
  Kind kind_;
};

/// Stateful sampler owning one stream. Draws are a deterministic function of
/// (spec, seed) and the number of draws taken so far.
class Sampler {
 public:
  Sampler(const DistributionSpec& spec, const SeedSpec& seed);

  double operator()();
  void fill(std::span<double> out);

  [[nodiscard]] Xoshiro256& engine() noexcept { return engine_; }

 private:
  DistributionSpec spec_;
  Xoshiro256 engine_;
  std::gamma_distribution<double> gamma_;
};

std::vector<double> sample(const DistributionSpec& spec, const SeedSpec& seed,
                           std::size_t count);

/// Left-continuous generalized inverse of the CDF; u must lie in (0, 1).
double quantile(const DistributionSpec& spec, double u);

double cdf(const DistributionSpec& spec, double x);

/// E(Z^k); +infinity when the moment diverges.
double moment(const DistributionSpec& spec, unsigned k);
double variance(const DistributionSpec& spec);

/// E(exp(tZ)); +infinity where it diverges.
double mgf(const DistributionSpec& spec, double t);
/// log E(exp(tZ)), evaluated without overflow; +infinity where M diverges.
double log_mgf(const DistributionSpec& spec, double t);
/// d/dt log M(t), the mean of the exponentially tilted law.
double tilted_mean(const DistributionSpec& spec, double t);

/// E(exp(itZ)). Only the spacing laws have one implemented.
std::complex<double> characteristic_function(const DistributionSpec& spec, double t);

/// Uniform permutation of 0..n-1 (Fisher-Yates).
std::vector<std::size_t> random_permutation(std::size_t n, const SeedSpec& seed);

}  // namespace renyi
