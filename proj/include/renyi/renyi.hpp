#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "renyi/distribution.hpp"

namespace renyi {

/// Generalized Renyi statistics X_{1,n} <= ... <= X_{n,n} built from the
/// generating variables Z_1..Z_n, X_{k,n} = sum_{j<=k} Z_j / (n + 1 - j).
class RenyiSample {
 public:
  [[nodiscard]] std::size_t size() const noexcept { return x_.size(); }
  [[nodiscard]] std::span<const double> z() const noexcept { return z_; }
  [[nodiscard]] std::span<const double> x() const noexcept { return x_; }

 private:
  friend RenyiSample generalized_renyi(std::vector<double> z);
  RenyiSample(std::vector<double> z, std::vector<double> x)
      : z_(std::move(z)), x_(std::move(x)) {}

  std::vector<double> z_;
  std::vector<double> x_;
};

/// Heavy-tailed order statistics W_{k,n} = C exp(X_{k,n}). The scale C is
/// part of the sample and plays the role of W_{0,n}.
class HeavySample {
 public:
  /// Wraps sorted observations. Requires C > 0 and C <= w_1 <= ... <= w_n.
  static HeavySample from_sorted(std::vector<double> w, double scale_c);

  [[nodiscard]] std::size_t size() const noexcept { return w_.size(); }
  [[nodiscard]] double scale() const noexcept { return scale_; }
  [[nodiscard]] std::span<const double> w() const noexcept { return w_; }
  /// W_{k,n} with the 1-based convention W_{0,n} = C.
  [[nodiscard]] double order_stat(std::size_t k) const noexcept {
    return k == 0 ? scale_ : w_[k - 1];
  }

 private:
  friend HeavySample heavy_sample(const RenyiSample& r, double scale_c);
  HeavySample(std::vector<double> w, double scale) : w_(std::move(w)), scale_(scale) {}

  std::vector<double> w_;
  double scale_;
};

/// Throws DomainError on empty input. Prefix sums run strictly left to right.
RenyiSample generalized_renyi(std::vector<double> z);

/// Throws ModelViolation if any generating Z is negative, ParameterError if
/// C <= 0.
HeavySample heavy_sample(const RenyiSample& r, double scale_c);

/// log(hi / lo) for 0 < lo <= hi, via log1p of the exact difference when
/// hi <= 2 lo.
double log_ratio(double hi, double lo);

/// (n - k + 1)(log W_{k,n} - log W_{k-1,n}), k = 1..n, with W_{0,n} = C.
std::vector<double> scaled_log_spacings(const HeavySample& h);

/// output[i] = x[perm[i]] for a permutation of 0..n-1.
std::vector<double> permuted_view(const RenyiSample& r, std::span<const std::size_t> perm);

/// Exact characteristic function of X_{delta_1,n}:
/// (1/n) sum_{m=1}^n prod_{j=1}^m phi(t / (n + 1 - j)).
std::complex<double> psi_n(const DistributionSpec& spec, std::size_t n, double t);

/// E(X_{delta_1,nu}^k) for 1 <= k <= k_max, 1 <= nu <= n.
class MomentTable {
 public:
  MomentTable(std::size_t k_max, std::size_t n) : k_max_(k_max), n_(n), data_(k_max * n) {}

  [[nodiscard]] double operator()(std::size_t k, std::size_t nu) const {
    return data_[(k - 1) * n_ + (nu - 1)];
  }
  double& at(std::size_t k, std::size_t nu) { return data_[(k - 1) * n_ + (nu - 1)]; }
  [[nodiscard]] std::size_t k_max() const noexcept { return k_max_; }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }

 private:
  std::size_t k_max_;
  std::size_t n_;
  std::vector<double> data_;
};

/// Exact moments through the recursion
///   m_{k,n} = mu_k/n^k + (n-1)/n m_{k,n-1}
///           + (n-1)/n sum_{j=1}^{k-1} C(k,j) n^{-(k-j)} mu_{k-j} m_{j,n-1},
/// started from m_{k,1} = mu_k. Entries are +infinity when a needed mu is.
MomentTable moment_recursion(const DistributionSpec& spec, std::size_t k_max, std::size_t n);

/// C_nu = E(X_{delta_1,nu} X_{delta_2,nu}) for nu = 2..n (element 0 is C_2).
std::vector<double> cross_moment_recursion(const DistributionSpec& spec, std::size_t n);

}  // namespace renyi
