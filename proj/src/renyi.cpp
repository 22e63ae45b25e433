#include "renyi/renyi.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "renyi/errors.hpp"
#include "renyi/format.hpp"

namespace renyi {

RenyiSample generalized_renyi(std::vector<double> z) {
  if (z.empty()) throw DomainError("generalized_renyi: empty input");
  const std::size_t n = z.size();
  std::vector<double> x(n);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += z[k] / static_cast<double>(n - k);
    x[k] = acc;
  }
  return RenyiSample(std::move(z), std::move(x));
}

HeavySample heavy_sample(const RenyiSample& r, double scale_c) {
  if (!(scale_c > 0.0) || !std::isfinite(scale_c)) {
    throw ParameterError("heavy_sample: scale C must be positive, got " + format_real(scale_c));
  }
  const auto z = r.z();
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (!(z[j] >= 0.0)) {
      throw ModelViolation("heavy_sample: spacing Z_" + std::to_string(j + 1) + " = " +
                           format_real(z[j]) + " is negative; model requires Z >= 0");
    }
  }
  const auto x = r.x();
  std::vector<double> w(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) w[k] = scale_c * std::exp(x[k]);
  return HeavySample(std::move(w), scale_c);
}

HeavySample HeavySample::from_sorted(std::vector<double> w, double scale_c) {
  if (!(scale_c > 0.0) || !std::isfinite(scale_c)) {
    throw DomainError("HeavySample: scale C must be positive, got " + format_real(scale_c));
  }
  if (w.empty()) throw DomainError("HeavySample: no observations");
  double previous = scale_c;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!std::isfinite(w[k]) || !(w[k] > 0.0)) {
      throw DomainError("HeavySample: observation " + std::to_string(k + 1) +
                        " is not a finite positive number");
    }
    if (w[k] < previous) {
      throw DomainError("HeavySample: observation " + std::to_string(k + 1) + " = " +
                        format_real(w[k]) + " is below its predecessor (or below C)");
    }
    previous = w[k];
  }
  return HeavySample(std::move(w), scale_c);
}

double log_ratio(double hi, double lo) {
  // hi - lo is exact when hi <= 2 lo, so log1p adds no rounding of its own.
  return hi <= 2.0 * lo ? std::log1p((hi - lo) / lo) : std::log(hi / lo);
}

std::vector<double> scaled_log_spacings(const HeavySample& h) {
  const std::size_t n = h.size();
  std::vector<double> out(n);
  for (std::size_t k = 1; k <= n; ++k) {
    out[k - 1] = static_cast<double>(n - k + 1) * log_ratio(h.order_stat(k), h.order_stat(k - 1));
  }
  return out;
}

std::vector<double> permuted_view(const RenyiSample& r, std::span<const std::size_t> perm) {
  const std::size_t n = r.size();
  if (perm.size() != n) throw DomainError("permuted_view: permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (const std::size_t p : perm) {
    if (p >= n || seen[p]) throw DomainError("permuted_view: not a bijection on 0..n-1");
    seen[p] = true;
  }
  const auto x = r.x();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x[perm[i]];
  return out;
}

std::complex<double> psi_n(const DistributionSpec& spec, std::size_t n, double t) {
  if (n == 0) throw DomainError("psi_n: n must be positive");
  if (!spec.is_spacing_law()) {
    throw NotImplementedError("psi_n: no closed-form characteristic function for " +
                              spec.to_string());
  }
  std::complex<double> product(1.0, 0.0);
  std::complex<double> sum(0.0, 0.0);
  for (std::size_t m = 1; m <= n; ++m) {
    product *= characteristic_function(spec, t / static_cast<double>(n + 1 - m));
    sum += product;
  }
  return sum / static_cast<double>(n);
}

MomentTable moment_recursion(const DistributionSpec& spec, std::size_t k_max, std::size_t n) {
  if (k_max == 0 || n == 0) throw DomainError("moment_recursion: k_max and n must be positive");
  std::vector<double> mu(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) mu[k] = moment(spec, static_cast<unsigned>(k));

  // binom[k][j] = C(k, j)
  std::vector<std::vector<double>> binom(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) {
    binom[k].assign(k + 1, 1.0);
    for (std::size_t j = 1; j < k; ++j) binom[k][j] = binom[k - 1][j - 1] + binom[k - 1][j];
  }

  MomentTable table(k_max, n);
  std::vector<double> prev(k_max + 1, 0.0);
  std::vector<double> cur(k_max + 1, 0.0);
  for (std::size_t k = 1; k <= k_max; ++k) {
    prev[k] = mu[k];
    table.at(k, 1) = mu[k];
  }
  for (std::size_t nu = 2; nu <= n; ++nu) {
    const double nd = static_cast<double>(nu);
    const double f = (nd - 1.0) / nd;
    for (std::size_t k = 1; k <= k_max; ++k) {
      double cross = 0.0;
      for (std::size_t j = 1; j < k; ++j) {
        cross += binom[k][j] * std::pow(nd, -static_cast<double>(k - j)) * mu[k - j] * prev[j];
      }
      cur[k] = mu[k] / std::pow(nd, static_cast<double>(k)) + f * prev[k] + f * cross;
      table.at(k, nu) = cur[k];
    }
    std::swap(prev, cur);
  }
  return table;
}

std::vector<double> cross_moment_recursion(const DistributionSpec& spec, std::size_t n) {
  if (n < 2) throw DomainError("cross_moment_recursion: n must be at least 2");
  const double gamma = moment(spec, 1);
  const double mu2 = moment(spec, 2);
  std::vector<double> c;
  c.reserve(n - 1);
  c.push_back(mu2 / 4.0 + gamma * gamma / 2.0);
  for (std::size_t nu = 3; nu <= n; ++nu) {
    const double nd = static_cast<double>(nu);
    c.push_back(mu2 / (nd * nd) + 2.0 * (gamma / nd) * (gamma - gamma / nd) +
                c.back() * (nd - 2.0) / nd);
  }
  return c;
}

}  // namespace renyi
