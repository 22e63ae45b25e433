#pragma once

#include <cstddef>
#include <cstdint>

#include "renyi/distribution.hpp"

namespace renyi {

/// Cramer rate function I(z) = sup_t (z t - log M(t)), by bisection on the
/// tilted mean inside the open interval where M is finite. Returns +infinity
/// when the supremum diverges. Throws NotImplementedError for laws whose
/// moment generating function is infinite on every right neighbourhood of 0.
double rate_function(const DistributionSpec& spec, double z);

/// inf_{x >= y} I(x): zero for y <= gamma, I(y) above it.
double upper_tail_rate(const DistributionSpec& spec, double y);

struct RatePair {
  double upper;  ///< lim (1/k) log P(gamma_hat / gamma >= 1 + c)
  double lower;  ///< lim (1/k) log P(gamma_hat / gamma <= 1 - c)
};

/// Gamma(r, r/gamma) spacings: (-rc + r log(1 + c), rc + r log(1 - c)).
RatePair gamma_family_rates(double r, double c);

/// Classical iid regularly varying model: the r = 1 member of the above.
RatePair iid_comparison_rates(double c);

/// log P(gamma_hat(k) >= y) under the spacing model with Exponential or Gamma spacings;
/// k gamma_hat is Gamma(k r, r / gamma).
double exact_hill_tail(const DistributionSpec& spec, std::size_t k, double y);

struct TailEstimate {
  enum class Status { ok, insufficient_events };
  Status status = Status::ok;
  double estimate = 0.0;   ///< (1/k) log(frequency); meaningful only when ok
  double std_error = 0.0;  ///< delta-method standard error of estimate
  std::uint64_t events = 0;
  std::uint64_t reps = 0;
  double expected_events = 0.0;
};

/// Monte Carlo (1/k) log P(gamma_hat(k) >= y) over `reps` spacing-model samples
/// with n = k. Replication i draws from stream seed.stream_index + i. When
/// reps * exp(-k I) < 100 the simulation is skipped and the status is
/// insufficient_events.
TailEstimate mc_tail_logprob(const DistributionSpec& spec, std::size_t k, double y,
                             std::uint64_t reps, const SeedSpec& seed, unsigned workers = 0);

}  // namespace renyi
