#include <doctest.h>

#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "renyi/errors.hpp"
#include "renyi/special.hpp"

using namespace renyi;

TEST_CASE("normal quantile against Boost") {
  const boost::math::normal_distribution<double> std_normal;
  for (const double p : {1e-300, 1e-100, 1e-20, 1e-8, 0.001, 0.02425, 0.025, 0.1, 0.3, 0.5, 0.7,
                         0.9, 0.95, 0.975, 0.97575, 0.999, 1.0 - 1e-10}) {
    CAPTURE(p);
    const double ref = boost::math::quantile(std_normal, p);
    CHECK(normal_quantile(p) == doctest::Approx(ref).epsilon(1e-13).scale(1.0));
  }
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.95) == doctest::Approx(1.6448536269514722).epsilon(1e-15));
}

TEST_CASE("normal quantile domain") {
  CHECK_THROWS_AS(normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(1.0), DomainError);
  CHECK_THROWS_AS(normal_quantile(std::nan("")), DomainError);
}

TEST_CASE("normal cdf") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.6448536269514722) == doctest::Approx(0.95).epsilon(1e-15));
  CHECK(normal_cdf(-37.0) > 0.0);
  CHECK(normal_cdf(-37.0) < 1e-298);
}

TEST_CASE("log Q against Boost where Q is representable") {
  for (const double a : {0.5, 1.0, 2.0, 10.0, 200.0, 4000.0}) {
    for (const double ratio : {0.01, 0.5, 0.9, 1.0, 1.1, 1.5, 2.0, 4.0}) {
      const double x = a * ratio;
      const double q = boost::math::gamma_q(a, x);
      if (q < 1e-300) continue;
      CAPTURE(a);
      CAPTURE(x);
      CHECK(std::abs(log_gamma_q(a, x) - std::log(q)) <= 1e-10 * std::max(1.0, std::abs(std::log(q))));
      CHECK(std::exp(log_gamma_q(a, x)) == doctest::Approx(q).epsilon(1e-10));
    }
  }
}

TEST_CASE("log Q in the deep tail") {
  // Exponential tail: Q(1, x) = exp(-x).
  CHECK(log_gamma_q(1.0, 2.0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(log_gamma_q(1.0, 5000.0) == doctest::Approx(-5000.0).epsilon(1e-14));
  // Q(2, x) = (1 + x) exp(-x).
  CHECK(log_gamma_q(2.0, 3000.0) == doctest::Approx(std::log1p(3000.0) - 3000.0).epsilon(1e-14));
  // Far below representable range yet finite.
  const double deep = log_gamma_q(200.0, 2000.0);
  CHECK(std::isfinite(deep));
  CHECK(deep < -1000.0);
}

TEST_CASE("log Q edges") {
  CHECK(log_gamma_q(3.0, 0.0) == 0.0);
  CHECK(log_gamma_q(3.0, -1.0) == 0.0);
  CHECK(std::isinf(log_gamma_q(3.0, INFINITY)));
  CHECK_THROWS_AS(log_gamma_q(0.0, 1.0), DomainError);
}
