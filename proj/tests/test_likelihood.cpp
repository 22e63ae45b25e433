#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/minima.hpp>

#include "renyi/distribution.hpp"
#include "renyi/errors.hpp"
#include "renyi/estimators.hpp"
#include "renyi/likelihood.hpp"
#include "renyi/renyi.hpp"

using namespace renyi;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

HeavySample model_sample(const DistributionSpec& spec, std::size_t n, SeedSpec seed, double c) {
  return heavy_sample(generalized_renyi(sample(spec, seed, n)), c);
}

// Independent density of each spacing law.
double oracle_log_g(const DistributionSpec& spec, double x) {
  if (x < 0.0) return kNegInf;
  const std::string s = spec.to_string();
  if (s.rfind("exp", 0) == 0) return -std::log(spec.gamma()) - x / spec.gamma();
  if (s.rfind("unif", 0) == 0) return x > 2.0 * spec.gamma() ? kNegInf : -std::log(2.0 * spec.gamma());
  const auto& g = std::get<GammaSpacing>(spec.kind());
  const double rate = g.shape / g.gamma;
  return std::log(boost::math::gamma_p_derivative(g.shape, rate * x) * rate);
}

// log k! + sum_j [log g((n-j+1) log(w_j / w_{j-1})) - log w_j] written out directly.
double oracle_conditional(const DistributionSpec& spec, const std::vector<double>& block) {
  const std::size_t k = block.size() - 1;
  double total = std::lgamma(double(k) + 1.0);
  for (std::size_t i = 1; i <= k; ++i) {
    const double lg = oracle_log_g(spec, double(k - i + 1) * std::log(block[i] / block[i - 1]));
    if (lg == kNegInf) return kNegInf;
    total += lg - std::log(block[i]);
  }
  return total;
}

std::vector<double> top_block(const HeavySample& h, std::size_t k) {
  std::vector<double> block(k + 1);
  for (std::size_t i = 0; i <= k; ++i) block[i] = h.order_stat(h.size() - k + i);
  return block;
}

}  // namespace

TEST_CASE("density model") {
  const DensityModel e(DistributionSpec::exponential(0.5));
  CHECK(e.density(1.0) == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-14));
  CHECK(e.log_density(-0.1) == kNegInf);
  const DensityModel u(DistributionSpec::uniform(0.5));
  CHECK(u.density(0.3) == doctest::Approx(1.0));
  CHECK(u.density(1.0) == doctest::Approx(1.0));
  CHECK(u.log_density(1.0001) == kNegInf);
  const auto gspec = DistributionSpec::gamma_law(2.5, 0.7);
  const DensityModel g(gspec);
  for (const double x : {0.01, 0.5, 3.0}) {
    CHECK(g.log_density(x) == doctest::Approx(oracle_log_g(gspec, x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(DensityModel(DistributionSpec::bernoulli(0.5)), ParameterError);
  CHECK_THROWS_AS(DensityModel(DistributionSpec::strict_pareto(0.5, 1.0)), ParameterError);
  CHECK_THROWS_AS(DensityModel(DistributionSpec::hall()), ParameterError);
}

TEST_CASE("conditional likelihood by hand") {
  const DensityModel e(DistributionSpec::exponential(0.5));
  const std::vector<double> block{1.0, std::exp(1.0)};
  CHECK(conditional_log_likelihood(e, block, 1) == doctest::Approx(std::log(2.0) - 3.0).epsilon(1e-14));
  CHECK(conditional_log_likelihood(e, block, 1) == doctest::Approx(-2.30685).epsilon(1e-5));

  const std::vector<double> decreasing{2.0, 1.0};
  CHECK_THROWS_AS(conditional_log_likelihood(e, decreasing, 1), DomainError);
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(conditional_log_likelihood(e, one, 1), DomainError);
  const std::vector<double> three{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(conditional_log_likelihood(e, three, 1), DomainError);
  const std::vector<double> negative{-1.0, 2.0};
  CHECK_THROWS_AS(conditional_log_likelihood(e, negative, 1), DomainError);
}

TEST_CASE("conditional likelihood against the direct formula") {
  for (const auto& spec : {DistributionSpec::exponential(0.5), DistributionSpec::uniform(0.5),
                           DistributionSpec::gamma_law(3.0, 0.5)}) {
    const DensityModel model(spec);
    const auto h = model_sample(spec, 200, {21, 0}, 2.0);
    for (const std::size_t k : {1u, 10u, 199u, 200u}) {
      const auto block = top_block(h, k);
      CAPTURE(spec.to_string());
      CAPTURE(k);
      CHECK(conditional_log_likelihood(model, h, k) ==
            doctest::Approx(oracle_conditional(spec, block)).epsilon(1e-10));
    }
  }
}

TEST_CASE("uniform support and ties") {
  const DensityModel u(DistributionSpec::uniform(0.5));
  // Top spacing 1 * log(e^2 / 1) = 2 exceeds the support [0, 1].
  const std::vector<double> off{1.0, std::exp(2.0)};
  CHECK(conditional_log_likelihood(u, off, 1) == kNegInf);
  const std::vector<double> tie{1.0, 1.0};
  CHECK(conditional_log_likelihood(u, tie, 1) == doctest::Approx(0.0));
  const DensityModel g(DistributionSpec::gamma_law(2.0, 0.5));
  CHECK(conditional_log_likelihood(g, tie, 1) == kNegInf);
}

TEST_CASE("ordered and permuted densities integrate to one") {
  using boost::math::quadrature::exp_sinh;
  using boost::math::quadrature::gauss_kronrod;
  for (const auto& spec : {DistributionSpec::exponential(0.8), DistributionSpec::gamma_law(2.0, 0.6)}) {
    const DensityModel model(spec);
    exp_sinh<double> outer;
    exp_sinh<double> inner;
    const double ordered = outer.integrate([&](double y1) {
      return inner.integrate([&](double d) {
        const double y[2] = {y1, y1 + d};
        return ordered_density(model, 2, y);
      });
    });
    // Integrate the permuted density over {y1 < y2} and double it.
    const double permuted = 2.0 * outer.integrate([&](double y1) {
      return inner.integrate([&](double d) {
        const double y[2] = {y1, y1 + d};
        return permuted_density(model, y);
      });
    });
    CAPTURE(spec.to_string());
    CHECK(std::abs(ordered - 1.0) <= 1e-4);
    CHECK(std::abs(permuted - 1.0) <= 1e-4);
  }

  const double gamma = 0.5;
  const DensityModel u(DistributionSpec::uniform(gamma));
  const double total = 2.0 * gauss_kronrod<double, 31>::integrate(
                                 [&](double y1) {
                                   return gauss_kronrod<double, 31>::integrate(
                                       [&](double d) {
                                         const double y[2] = {y1, y1 + d};
                                         return permuted_density(u, y);
                                       },
                                       0.0, 2.0 * gamma);
                                 },
                                 0.0, gamma);
  CHECK(std::abs(total - 1.0) <= 1e-4);
}

TEST_CASE("density edge cases") {
  const DensityModel e(DistributionSpec::exponential(1.0));
  const std::vector<double> unordered{0.5, 0.2};
  CHECK(ordered_density(e, 2, unordered) == 0.0);
  CHECK(log_ordered_density(e, 2, unordered) == kNegInf);
  const std::vector<double> negative{-0.5, 0.2};
  CHECK(permuted_density(e, negative) == 0.0);
  CHECK_THROWS_AS(ordered_density(e, 2, negative), DomainError);
  const std::vector<double> y{0.1, 0.2, 0.3};
  CHECK_THROWS_AS(ordered_density(e, 2, y), DomainError);
  CHECK_THROWS_AS(permuted_density(e, std::vector<double>{}), DomainError);
  // Permutation invariance.
  const std::vector<double> a{0.3, 0.1, 0.7};
  const std::vector<double> b{0.7, 0.3, 0.1};
  CHECK(permuted_density(e, a) == permuted_density(e, b));
}

TEST_CASE("ML identities hold for exponential and gamma families") {
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    const auto spec = DistributionSpec::gamma_law(2.0, 0.5);
    const auto h = model_sample(spec, 60, {22, rep}, 1.5);
    const std::size_t k = 10 + 2 * rep;
    const double hill_value = hill(h, k);
    for (const auto& family : {FamilyTag::parse("exponential"), FamilyTag::parse("gamma", 2.0),
                               FamilyTag::parse("gamma", 0.7)}) {
      const auto neg = [&](double gamma) {
        return -conditional_log_likelihood(DensityModel(family.member(gamma)), h, k);
      };
      const auto [argmax, value] = boost::math::tools::brent_find_minima(neg, 0.01, 5.0, 50);
      CHECK(std::abs(argmax - hill_value) <= 1e-6);
      CHECK(ml_fit(family, h, k) == hill_value);
    }
  }
}

TEST_CASE("likelihood is maximized at the ML fit") {
  for (const auto& [name, spec] :
       {std::pair{"exponential", DistributionSpec::exponential(0.5)},
        std::pair{"uniform", DistributionSpec::uniform(0.5)},
        std::pair{"gamma", DistributionSpec::gamma_law(3.0, 0.5)}}) {
    const auto family = FamilyTag::parse(name, 3.0);
    const auto h = model_sample(spec, 400, {23, 0}, 1.0);
    const double fit = ml_fit(family, h, 400);
    const double best = conditional_log_likelihood(DensityModel(family.member(fit)), h, 400);
    CAPTURE(name);
    CHECK(std::isfinite(best));
    for (const double factor : {0.9, 0.999, 1.001, 1.1}) {
      CHECK(conditional_log_likelihood(DensityModel(family.member(fit * factor)), h, 400) < best);
    }
  }
  const auto h = model_sample(DistributionSpec::uniform(0.5), 400, {23, 1}, 1.0);
  const double fit = ml_uniform(h, 400);
  CHECK(conditional_log_likelihood(DensityModel(DistributionSpec::uniform(fit * 0.999)), h, 400) == kNegInf);
}

TEST_CASE("family tags") {
  CHECK(FamilyTag::parse("Exponential").family == MlFamily::exponential);
  CHECK(FamilyTag::parse("uniform").family == MlFamily::uniform);
  CHECK(FamilyTag::parse("gamma", 2.0).shape == 2.0);
  CHECK_THROWS_AS(FamilyTag::parse("gamma", 0.0), ParameterError);
  CHECK_THROWS_AS(FamilyTag::parse("weibull"), ParameterError);
  CHECK(FamilyTag::parse("gamma", 2.0).member(0.5).to_string() ==
        DistributionSpec::gamma_law(2.0, 0.5).to_string());
}

TEST_CASE("ordered density by hand and normalization for small n") {
  using boost::math::quadrature::exp_sinh;
  const DensityModel e(DistributionSpec::exponential(1.0));
  const std::vector<double> y{0.3, 1.1};
  CHECK(ordered_density(e, 2, y) == doctest::Approx(2.0 * std::exp(-0.3 - 1.1)).epsilon(1e-14));

  const DensityModel g(DistributionSpec::gamma_law(1.5, 0.4));
  exp_sinh<double> outer;
  exp_sinh<double> inner;
  const double one = outer.integrate([&](double y1) {
    const double p[1] = {y1};
    return ordered_density(g, 3, p);
  });
  const double two = outer.integrate([&](double y1) {
    return inner.integrate([&](double d) {
      const double p[2] = {y1, y1 + d};
      return ordered_density(g, 3, p);
    });
  });
  CHECK(std::abs(one - 1.0) <= 1e-6);
  CHECK(std::abs(two - 1.0) <= 1e-4);
}

TEST_CASE("conditional likelihood integrates to one") {
  using boost::math::quadrature::exp_sinh;
  const DensityModel e(DistributionSpec::exponential(0.5));
  const double w0 = 1.7;
  exp_sinh<double> outer;
  exp_sinh<double> inner;
  const double k1 = outer.integrate([&](double d1) {
    const double block[2] = {w0, w0 + d1};
    return std::exp(conditional_log_likelihood(e, block, 5));
  });
  const double k2 = outer.integrate([&](double d1) {
    return inner.integrate([&](double d2) {
      const double block[3] = {w0, w0 + d1, w0 + d1 + d2};
      return std::exp(conditional_log_likelihood(e, block, 5));
    });
  });
  CHECK(std::abs(k1 - 1.0) <= 1e-4);
  CHECK(std::abs(k2 - 1.0) <= 1e-4);
}

TEST_CASE("ML fit beats a 200-point gamma grid") {
  for (const auto& [name, spec] :
       {std::pair{"exponential", DistributionSpec::exponential(0.5)},
        std::pair{"uniform", DistributionSpec::uniform(0.5)},
        std::pair{"gamma", DistributionSpec::gamma_law(3.0, 0.5)}}) {
    const auto family = FamilyTag::parse(name, 3.0);
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
      const auto h = model_sample(spec, 100, {24, rep}, 1.0);
      const std::size_t k = 20 + 4 * rep;
      const double best = conditional_log_likelihood(DensityModel(family.member(ml_fit(family, h, k))), h, k);
      bool beaten = false;
      for (int i = 1; i <= 200; ++i) {
        const double gamma = 0.0125 * i;
        beaten |= conditional_log_likelihood(DensityModel(family.member(gamma)), h, k) > best;
      }
      CAPTURE(name);
      CAPTURE(rep);
      CHECK_FALSE(beaten);
    }
  }
}
