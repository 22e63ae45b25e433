#pragma once

namespace renyi {

double normal_cdf(double x);

/// Standard normal quantile, accurate to about 1e-15 absolute for
/// p in [1e-300, 1 - 1e-16]. Throws DomainError outside (0, 1).
double normal_quantile(double p);

/// log Q(a, x), the regularized upper incomplete gamma function, computed in
/// log space so that deep tails (Q below 1e-308) stay representable.
double log_gamma_q(double a, double x);

}  // namespace renyi
