#include "renyi/large_deviations.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <variant>

#include "renyi/errors.hpp"
#include "renyi/estimators.hpp"
#include "renyi/format.hpp"
#include "renyi/parallel.hpp"
#include "renyi/renyi.hpp"
#include "renyi/special.hpp"

namespace renyi {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Right end of the open interval where M(t) < infinity.
double mgf_domain_end(const DistributionSpec& spec) {
  if (const auto* e = std::get_if<Exponential>(&spec.kind())) return 1.0 / e->gamma;
  if (const auto* g = std::get_if<GammaSpacing>(&spec.kind())) return g->shape / g->gamma;
  return kInf;
}

// Support hull [lo, hi] of the spacing law.
std::pair<double, double> support_hull(const DistributionSpec& spec) {
  if (const auto* u = std::get_if<UniformSpacing>(&spec.kind())) return {0.0, 2.0 * u->gamma};
  if (std::holds_alternative<Bernoulli>(spec.kind())) return {0.0, 1.0};
  return {0.0, kInf};
}

}  // namespace

double rate_function(const DistributionSpec& spec, double z) {
  if (std::isnan(z)) throw DomainError("rate_function: NaN argument");
  if (!spec.is_spacing_law()) {
    throw NotImplementedError("rate_function: M(t) is infinite for every t > 0 under " +
                              spec.to_string());
  }
  const double gamma = spec.gamma();
  if (z == gamma) return 0.0;

  const auto [lo_support, hi_support] = support_hull(spec);
  if (const auto* b = std::get_if<Bernoulli>(&spec.kind())) {
    const double p = b->gamma;
    if (z < 0.0 || z > 1.0) return kInf;
    // Lattice edges: the supremum is approached as t -> +-infinity but is finite.
    if (z == 1.0) return -std::log(p);
    if (z == 0.0) return p == 1.0 ? kInf : -std::log1p(-p);
    if (p == 1.0) return kInf;
  } else if (z <= lo_support || z >= hi_support) {
    return kInf;
  }

  // g(t) = z t - log M(t) is concave with g'(t) = z - tilted_mean(t); find the
  // root of g' by bracketing and bisection.
  const double t_end = mgf_domain_end(spec);
  double lo = 0.0;
  double hi = 0.0;
  if (z > gamma) {
    if (std::isfinite(t_end)) {
      // Approach the boundary geometrically; it is never evaluated.
      double gap = 0.5;
      hi = t_end * (1.0 - gap);
      while (tilted_mean(spec, hi) <= z) {
        lo = hi;
        gap *= 0.5;
        if (gap < 1e-300) return kInf;
        hi = t_end * (1.0 - gap);
      }
    } else {
      hi = 1.0;
      while (tilted_mean(spec, hi) <= z) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) return kInf;
      }
    }
  } else {
    lo = -1.0;
    while (tilted_mean(spec, lo) >= z) {
      hi = lo;
      lo *= 2.0;
      if (lo < -1e300) return kInf;
    }
  }

  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (tilted_mean(spec, mid) < z ? lo : hi) = mid;
  }
  const double t_star = 0.5 * (lo + hi);
  const double value = z * t_star - log_mgf(spec, t_star);
  return value > 0.0 ? value : 0.0;
}

double upper_tail_rate(const DistributionSpec& spec, double y) {
  if (y <= spec.gamma()) return 0.0;
  return rate_function(spec, y);
}

RatePair gamma_family_rates(double r, double c) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw ParameterError("gamma_family_rates: r must be positive, got " + format_real(r));
  }
  if (!(c > 0.0 && c < 1.0)) {
    throw DomainError("gamma_family_rates: c must lie in (0, 1), got " + format_real(c));
  }
  return {-r * c + r * std::log1p(c), r * c + r * std::log1p(-c)};
}

RatePair iid_comparison_rates(double c) { return gamma_family_rates(1.0, c); }

double exact_hill_tail(const DistributionSpec& spec, std::size_t k, double y) {
  if (k == 0) throw DomainError("exact_hill_tail: k must be positive");
  double shape = 0.0;
  double rate = 0.0;
  if (const auto* e = std::get_if<Exponential>(&spec.kind())) {
    shape = 1.0;
    rate = 1.0 / e->gamma;
  } else if (const auto* g = std::get_if<GammaSpacing>(&spec.kind())) {
    shape = g->shape;
    rate = g->shape / g->gamma;
  } else {
    throw NotImplementedError("exact_hill_tail: closed form only for exponential and gamma laws");
  }
  if (y <= 0.0) return 0.0;
  const double kd = static_cast<double>(k);
  return log_gamma_q(kd * shape, kd * y * rate);
}

TailEstimate mc_tail_logprob(const DistributionSpec& spec, std::size_t k, double y,
                             std::uint64_t reps, const SeedSpec& seed, unsigned workers) {
  if (k == 0) throw DomainError("mc_tail_logprob: k must be positive");
  if (reps == 0) throw DomainError("mc_tail_logprob: reps must be positive");
  if (!spec.is_spacing_law()) {
    throw DomainError("mc_tail_logprob: the spacing model needs a spacing law, got " + spec.to_string());
  }
  TailEstimate out;
  out.reps = reps;
  if (y <= 0.0) {
    out.events = reps;
    out.expected_events = static_cast<double>(reps);
    return out;
  }
  const double kd = static_cast<double>(k);
  out.expected_events = static_cast<double>(reps) * std::exp(-kd * upper_tail_rate(spec, y));
  if (out.expected_events < 100.0) {
    out.status = TailEstimate::Status::insufficient_events;
    return out;
  }

  std::uint64_t hits = 0;
  replicate_ordered<char>(
      reps, workers,
      [&](std::size_t i) -> char {
        Sampler sampler(spec, {seed.master_seed, seed.stream_index + i});
        std::vector<double> z(k);
        sampler.fill(z);
        const HeavySample h = heavy_sample(generalized_renyi(std::move(z)), 1.0);
        return hill(h, k) >= y ? 1 : 0;
      },
      [&](std::size_t, char hit) { hits += static_cast<std::uint64_t>(hit); });

  out.events = hits;
  if (hits == 0) {
    out.status = TailEstimate::Status::insufficient_events;
    return out;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(reps);
  out.estimate = std::log(p) / kd;
  out.std_error = std::sqrt((1.0 - p) / (p * static_cast<double>(reps))) / kd;
  return out;
}

}  // namespace renyi
