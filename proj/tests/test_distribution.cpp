#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <set>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "renyi/distribution.hpp"
#include "renyi/errors.hpp"
#include "renyi/stats.hpp"

using namespace renyi;
using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::gauss_kronrod;

namespace {

// Density of a spacing law written out independently of the library.
double oracle_density(const DistributionSpec& spec, double x) {
  if (const auto* e = std::get_if<Exponential>(&spec.kind())) {
    return std::exp(-x / e->gamma) / e->gamma;
  }
  if (const auto* u = std::get_if<UniformSpacing>(&spec.kind())) {
    return x <= 2.0 * u->gamma ? 1.0 / (2.0 * u->gamma) : 0.0;
  }
  const auto& g = std::get<GammaSpacing>(spec.kind());
  boost::math::gamma_distribution<double> law(g.shape, g.gamma / g.shape);
  return boost::math::pdf(law, x);
}

template <class F>
double integrate_law(const DistributionSpec& spec, F&& f) {
  if (const auto* u = std::get_if<UniformSpacing>(&spec.kind())) {
    return gauss_kronrod<double, 61>::integrate(
        [&](double x) { return f(x) * oracle_density(spec, x); }, 0.0, 2.0 * u->gamma, 15, 1e-13);
  }
  exp_sinh<double> integrator;
  return integrator.integrate(
      [&](double x) {
        const double d = oracle_density(spec, x);
        return d == 0.0 ? 0.0 : f(x) * d;
      },
      1e-13);
}

const DistributionSpec kContinuous[] = {
    DistributionSpec::exponential(0.5), DistributionSpec::exponential(2.0),
    DistributionSpec::uniform(0.5),     DistributionSpec::uniform(1.5),
    DistributionSpec::gamma_law(2.0, 0.5), DistributionSpec::gamma_law(0.7, 1.0)};

}  // namespace

TEST_CASE("canonical text form round-trips") {
  for (const char* text : {"exp:gamma=0.5", "unif:gamma=0.5", "bern:gamma=0.5",
                           "gamma:r=2,gamma=0.5", "pareto:gamma=0.5,c=1", "hall"}) {
    const auto spec = DistributionSpec::parse(text);
    CHECK(spec.to_string() == text);
    CHECK(DistributionSpec::parse(spec.to_string()) == spec);
  }
  CHECK(DistributionSpec::parse("EXP:GAMMA=0.25").to_string() == "exp:gamma=0.25");
  CHECK(DistributionSpec::parse(" gamma : gamma = 1 , r = 3 ").to_string() == "gamma:r=3,gamma=1");
  CHECK(DistributionSpec::parse("exp").gamma() == 0.5);
  CHECK(DistributionSpec::parse("pareto:gamma=0.25").to_string() == "pareto:gamma=0.25,c=1");
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(DistributionSpec::exponential(0.0), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::exponential(-1.0), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::uniform(std::nan("")), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::bernoulli(0.0), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::bernoulli(1.5), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::gamma_law(0.0, 0.5), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::strict_pareto(0.5, -1.0), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::parse("exp:beta=1"), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::parse("exp:gamma=1,gamma=2"), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::parse("gamma:gamma=1"), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::parse("weibull:gamma=1"), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::parse("exp:gamma"), ParameterError);
  CHECK_THROWS_AS(DistributionSpec::parse("hall:gamma=0.5"), ParameterError);
}

TEST_CASE("classification") {
  CHECK(DistributionSpec::bernoulli(0.5).is_spacing_law());
  CHECK_FALSE(DistributionSpec::bernoulli(0.5).is_absolutely_continuous());
  CHECK_FALSE(DistributionSpec::hall().is_spacing_law());
  CHECK(DistributionSpec::hall().gamma() == 0.5);
  CHECK(DistributionSpec::hall().lower_endpoint() == 1.5);
  CHECK(DistributionSpec::strict_pareto(0.5, 3.0).lower_endpoint() == 3.0);
}

TEST_CASE("Bernoulli with gamma = 1 is the atom at one") {
  const auto values = sample(DistributionSpec::bernoulli(1.0), {1, 0}, 10000);
  CHECK(std::all_of(values.begin(), values.end(), [](double v) { return v == 1.0; }));
}

TEST_CASE("sample mean and variance at 1e6 draws") {
  const auto u = sample(DistributionSpec::uniform(0.5), {11, 0}, 1000000);
  const auto mu = mean_variance(u);
  CHECK(mu.mean >= 0.497);
  CHECK(mu.mean <= 0.503);

  const auto e = sample(DistributionSpec::exponential(0.5), {11, 1}, 1000000);
  const auto me = mean_variance(e);
  CHECK(me.mean >= 0.498);
  CHECK(me.mean <= 0.502);
  CHECK(std::abs(me.variance / 0.25 - 1.0) < 0.02);
}

TEST_CASE("count zero is a domain error") {
  CHECK_THROWS_AS(sample(DistributionSpec::exponential(1.0), {1, 0}, 0), DomainError);
}

TEST_CASE("quantile examples and domain") {
  CHECK(quantile(DistributionSpec::strict_pareto(0.5, 1.0), 0.75) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(quantile(DistributionSpec::exponential(1.0), 1.0 - std::exp(-1.0)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(quantile(DistributionSpec::hall(), 0.0), DomainError);
  CHECK_THROWS_AS(quantile(DistributionSpec::hall(), 1.0), DomainError);
  CHECK_THROWS_AS(quantile(DistributionSpec::exponential(1.0), -0.1), DomainError);
  CHECK(quantile(DistributionSpec::bernoulli(0.3), 0.7) == 0.0);
  CHECK(quantile(DistributionSpec::bernoulli(0.3), 0.71) == 1.0);
  // Hall-class quantile at u -> 0 gives the lower endpoint 1.5.
  CHECK(quantile(DistributionSpec::hall(), 1e-12) == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("cdf inverts the quantile") {
  const DistributionSpec specs[] = {
      DistributionSpec::exponential(0.5),    DistributionSpec::uniform(0.5),
      DistributionSpec::gamma_law(2.0, 0.5), DistributionSpec::gamma_law(0.5, 2.0),
      DistributionSpec::strict_pareto(0.5, 2.0), DistributionSpec::hall()};
  for (const auto& spec : specs) {
    for (const double u : {0.001, 0.1, 0.25, 0.5, 0.9, 0.999}) {
      CAPTURE(spec.to_string());
      CAPTURE(u);
      CHECK(cdf(spec, quantile(spec, u)) == doctest::Approx(u).epsilon(1e-10));
    }
  }
}

TEST_CASE("Hall cdf against its defining quantile") {
  // Q(1 - v) = v^(-1/2)(1 + v/2) so P(X > Q(1 - v)) = v.
  const auto hall = DistributionSpec::hall();
  for (const double v : {1e-6, 0.01, 0.3, 0.9}) {
    const double x = (1.0 + 0.5 * v) / std::sqrt(v);
    CHECK(1.0 - cdf(hall, x) == doctest::Approx(v).epsilon(1e-9));
  }
  CHECK(cdf(hall, 1.5) == 0.0);
}

TEST_CASE("moments against numerical integration") {
  for (const auto& spec : kContinuous) {
    for (unsigned k = 1; k <= 4; ++k) {
      CAPTURE(spec.to_string());
      CAPTURE(k);
      const double oracle = integrate_law(spec, [k](double x) { return std::pow(x, k); });
      CHECK(moment(spec, k) == doctest::Approx(oracle).epsilon(1e-9));
    }
  }
  CHECK(moment(DistributionSpec::bernoulli(0.3), 3) == doctest::Approx(0.3));
  CHECK(variance(DistributionSpec::bernoulli(0.3)) == doctest::Approx(0.21));
  CHECK(variance(DistributionSpec::uniform(0.5)) == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("heavy-tailed moments signal divergence") {
  const auto pareto = DistributionSpec::strict_pareto(0.5, 1.0);
  CHECK(moment(pareto, 1) == doctest::Approx(2.0));
  CHECK(std::isinf(moment(pareto, 2)));
  CHECK(std::isinf(variance(pareto)));
  CHECK(moment(DistributionSpec::hall(), 1) == doctest::Approx(7.0 / 3.0));
  CHECK(std::isinf(moment(DistributionSpec::hall(), 2)));
}

TEST_CASE("mgf, tilted mean and characteristic function against integration") {
  for (const auto& spec : kContinuous) {
    const double g = spec.gamma();
    for (const double t : {-3.0 / g, -0.4 / g, 0.3 / g, 0.45 / g}) {
      CAPTURE(spec.to_string());
      CAPTURE(t);
      const double m = integrate_law(spec, [t](double x) { return std::exp(t * x); });
      const double m1 = integrate_law(spec, [t](double x) { return x * std::exp(t * x); });
      CHECK(mgf(spec, t) == doctest::Approx(m).epsilon(1e-9));
      CHECK(log_mgf(spec, t) == doctest::Approx(std::log(m)).epsilon(1e-9));
      CHECK(tilted_mean(spec, t) == doctest::Approx(m1 / m).epsilon(1e-8));
    }
    for (const double t : {-2.0, 0.5, 3.0}) {
      const double re = integrate_law(spec, [t](double x) { return std::cos(t * x); });
      const double im = integrate_law(spec, [t](double x) { return std::sin(t * x); });
      const auto phi = characteristic_function(spec, t);
      CHECK(phi.real() == doctest::Approx(re).epsilon(1e-8));
      CHECK(phi.imag() == doctest::Approx(im).epsilon(1e-8));
    }
  }
}

TEST_CASE("Bernoulli mgf family") {
  const auto b = DistributionSpec::bernoulli(0.3);
  for (const double t : {-50.0, -1.0, 0.5, 40.0}) {
    CHECK(log_mgf(b, t) == doctest::Approx(std::log(0.7 + 0.3 * std::exp(t))).epsilon(1e-12));
    CHECK(tilted_mean(b, t) ==
          doctest::Approx(0.3 * std::exp(t) / (0.7 + 0.3 * std::exp(t))).epsilon(1e-12));
  }
  const auto phi = characteristic_function(b, 1.2);
  CHECK(phi.real() == doctest::Approx(0.7 + 0.3 * std::cos(1.2)));
  CHECK(phi.imag() == doctest::Approx(0.3 * std::sin(1.2)));
}

TEST_CASE("uniform tilted mean is continuous across the series switch") {
  // a = 1: tilted mean 1/(1 - e^-t) - 1/t = 1/2 + t/12 - t^3/720 + t^5/30240 - ...
  const auto u = DistributionSpec::uniform(0.5);
  CHECK(tilted_mean(u, 0.0) == doctest::Approx(0.5));
  for (const double t : {-1.01e-4, -0.99e-4, 0.99e-4, 1.01e-4, 3e-3}) {
    const double series = 0.5 + t / 12.0 - t * t * t / 720.0 + std::pow(t, 5) / 30240.0;
    CAPTURE(t);
    CHECK(std::abs(tilted_mean(u, t) - series) < 1e-12);
  }
}

TEST_CASE("mgf diverges where expected") {
  CHECK(std::isinf(mgf(DistributionSpec::exponential(0.5), 2.0)));
  CHECK(std::isinf(mgf(DistributionSpec::gamma_law(2.0, 1.0), 2.5)));
  CHECK(std::isinf(mgf(DistributionSpec::strict_pareto(0.5, 1.0), 0.01)));
  CHECK_THROWS_AS(characteristic_function(DistributionSpec::hall(), 1.0), NotImplementedError);
}

TEST_CASE("samplers follow their cdf (KS at 1%)") {
  const DistributionSpec specs[] = {
      DistributionSpec::exponential(0.5), DistributionSpec::uniform(0.5),
      DistributionSpec::gamma_law(2.0, 0.5), DistributionSpec::gamma_law(0.5, 1.0),
      DistributionSpec::strict_pareto(0.5, 1.0), DistributionSpec::hall()};
  const std::size_t m = 20000;
  std::uint64_t stream = 0;
  for (const auto& spec : specs) {
    CAPTURE(spec.to_string());
    const auto draws = sample(spec, {2024, stream++}, m);
    const double d = ks_statistic(draws, [&](double x) { return cdf(spec, x); });
    CHECK(d < ks_critical(0.01, static_cast<double>(m)));
  }
}

TEST_CASE("Bernoulli sampler frequency") {
  const auto draws = sample(DistributionSpec::bernoulli(0.3), {3, 0}, 200000);
  const double freq = std::accumulate(draws.begin(), draws.end(), 0.0) / 200000.0;
  CHECK(std::abs(freq - 0.3) < 5.0 * std::sqrt(0.21 / 200000.0));
}

TEST_CASE("Sampler streams are deterministic") {
  const auto spec = DistributionSpec::gamma_law(2.0, 0.5);
  CHECK(sample(spec, {8, 1}, 100) == sample(spec, {8, 1}, 100));
  CHECK(sample(spec, {8, 1}, 100) != sample(spec, {8, 2}, 100));
}

TEST_CASE("random permutations") {
  CHECK(random_permutation(1, {1, 0}) == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(random_permutation(0, {1, 0}), DomainError);

  auto p = random_permutation(5, {9, 9});
  std::sort(p.begin(), p.end());
  CHECK(p == std::vector<std::size_t>{0, 1, 2, 3, 4});

  std::map<std::vector<std::size_t>, int> counts;
  const int reps = 600000;
  for (int i = 0; i < reps; ++i) ++counts[random_permutation(3, {77, static_cast<std::uint64_t>(i)})];
  CHECK(counts.size() == 6);
  for (const auto& [perm, c] : counts) CHECK(std::abs(c / double(reps) - 1.0 / 6.0) < 0.005);
}
