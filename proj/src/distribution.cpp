#include "renyi/distribution.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "renyi/errors.hpp"
#include "renyi/format.hpp"

namespace renyi {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError(std::string(what) + " must be a finite positive number, got " +
                         format_real(value));
  }
}

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Hall-class quantile Q(1-v) = v^(-1/2) (1 + v/2), v in (0, 1].
double hall_upper_quantile(double v) { return (1.0 + 0.5 * v) / std::sqrt(v); }

constexpr double kHallGamma = 0.5;
constexpr double kHallLower = 1.5;

}  // namespace

DistributionSpec DistributionSpec::exponential(double gamma) {
  require_positive(gamma, "exponential gamma");
  return DistributionSpec(Exponential{gamma});
}

DistributionSpec DistributionSpec::uniform(double gamma) {
  require_positive(gamma, "uniform gamma");
  return DistributionSpec(UniformSpacing{gamma});
}

DistributionSpec DistributionSpec::bernoulli(double gamma) {
  // gamma = 1 is the degenerate atom at 1 and is admitted.
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw ParameterError("bernoulli gamma must lie in (0, 1], got " + format_real(gamma));
  }
  return DistributionSpec(Bernoulli{gamma});
}

DistributionSpec DistributionSpec::gamma_law(double shape, double gamma) {
  require_positive(shape, "gamma shape r");
  require_positive(gamma, "gamma-law gamma");
  return DistributionSpec(GammaSpacing{shape, gamma});
}

DistributionSpec DistributionSpec::strict_pareto(double gamma, double scale) {
  require_positive(gamma, "pareto gamma");
  require_positive(scale, "pareto scale c");
  return DistributionSpec(StrictPareto{gamma, scale});
}

DistributionSpec DistributionSpec::hall() { return DistributionSpec(HallPerturbedPareto{}); }

DistributionSpec DistributionSpec::parse(std::string_view raw) {
  const std::string text = lowercase(trim(raw));
  const auto colon = text.find(':');
  const std::string kind(trim(std::string_view(text).substr(0, colon)));
  std::map<std::string, double> params;
  if (colon != std::string::npos) {
    std::string_view rest = std::string_view(text).substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw ParameterError("expected key=value in distribution '" + std::string(raw) + "'");
      }
      const std::string key(trim(item.substr(0, eq)));
      if (params.count(key) != 0) throw ParameterError("duplicate key '" + key + "'");
      params[key] = parse_real(trim(item.substr(eq + 1)));
    }
  }

  const auto allow = [&](std::set<std::string> keys) {
    for (const auto& [key, value] : params) {
      if (keys.count(key) == 0) {
        throw ParameterError("unknown key '" + key + "' for distribution '" + kind + "'");
      }
    }
  };
  const auto get = [&](const std::string& key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };

  if (kind == "exp") {
    allow({"gamma"});
    return exponential(get("gamma", 0.5));
  }
  if (kind == "unif") {
    allow({"gamma"});
    return uniform(get("gamma", 0.5));
  }
  if (kind == "bern") {
    allow({"gamma"});
    return bernoulli(get("gamma", 0.5));
  }
  if (kind == "gamma") {
    allow({"r", "gamma"});
    if (params.count("r") == 0) throw ParameterError("gamma law requires r");
    return gamma_law(params.at("r"), get("gamma", 0.5));
  }
  if (kind == "pareto") {
    allow({"gamma", "c"});
    return strict_pareto(get("gamma", 0.5), get("c", 1.0));
  }
  if (kind == "hall") {
    allow({});
    return hall();
  }
  throw ParameterError("unknown distribution kind '" + kind + "'");
}

std::string DistributionSpec::to_string() const {
  return std::visit(
      Overloaded{
          [](const Exponential& d) { return "exp:gamma=" + format_real(d.gamma); },
          [](const UniformSpacing& d) { return "unif:gamma=" + format_real(d.gamma); },
          [](const Bernoulli& d) { return "bern:gamma=" + format_real(d.gamma); },
          [](const GammaSpacing& d) {
            return "gamma:r=" + format_real(d.shape) + ",gamma=" + format_real(d.gamma);
          },
          [](const StrictPareto& d) {
            return "pareto:gamma=" + format_real(d.gamma) + ",c=" + format_real(d.scale);
          },
          [](const HallPerturbedPareto&) { return std::string("hall"); },
      },
      kind_);
}

std::string_view DistributionSpec::kind_name() const {
  static constexpr std::string_view names[] = {"exp", "unif", "bern", "gamma", "pareto", "hall"};
  return names[kind_.index()];
}

double DistributionSpec::gamma() const noexcept {
  return std::visit(Overloaded{
                        [](const HallPerturbedPareto&) { return kHallGamma; },
                        [](const auto& d) { return d.gamma; },
                    },
                    kind_);
}

bool DistributionSpec::is_spacing_law() const noexcept { return kind_.index() <= 3; }

bool DistributionSpec::is_absolutely_continuous() const noexcept {
  return !std::holds_alternative<Bernoulli>(kind_);
}

double DistributionSpec::lower_endpoint() const noexcept {
  if (const auto* p = std::get_if<StrictPareto>(&kind_)) return p->scale;
  if (std::holds_alternative<HallPerturbedPareto>(kind_)) return kHallLower;
  return 0.0;
}

// ---------------------------------------------------------------------------

Sampler::Sampler(const DistributionSpec& spec, const SeedSpec& seed)
    : spec_(spec), engine_(seed) {
  if (const auto* g = std::get_if<GammaSpacing>(&spec_.kind())) {
    gamma_ = std::gamma_distribution<double>(g->shape, g->gamma / g->shape);
  }
}

double Sampler::operator()() {
  const auto& kind = spec_.kind();
  switch (kind.index()) {
    case 0:
      return -std::get<Exponential>(kind).gamma * std::log(engine_.uniform_open());
    case 1:
      return 2.0 * std::get<UniformSpacing>(kind).gamma * engine_.uniform_open();
    case 2:
      return engine_.uniform_open() < std::get<Bernoulli>(kind).gamma ? 1.0 : 0.0;
    case 3:
      return gamma_(engine_);
    case 4: {
      const auto& p = std::get<StrictPareto>(kind);
      return p.scale * std::pow(engine_.uniform_open(), -p.gamma);
    }
    default:
      return hall_upper_quantile(engine_.uniform_open());
  }
}

void Sampler::fill(std::span<double> out) {
  for (double& v : out) v = (*this)();
}

std::vector<double> sample(const DistributionSpec& spec, const SeedSpec& seed,
                           std::size_t count) {
  if (count == 0) throw DomainError("sample: count must be positive");
  Sampler sampler(spec, seed);
  std::vector<double> out(count);
  sampler.fill(out);
  return out;
}

double quantile(const DistributionSpec& spec, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("quantile: u must lie in (0, 1), got " + format_real(u));
  }
  return std::visit(
      Overloaded{
          [u](const Exponential& d) { return -d.gamma * std::log1p(-u); },
          [u](const UniformSpacing& d) { return 2.0 * d.gamma * u; },
          [u](const Bernoulli& d) { return u <= 1.0 - d.gamma ? 0.0 : 1.0; },
          [u](const GammaSpacing& d) {
            return boost::math::gamma_p_inv(d.shape, u) * d.gamma / d.shape;
          },
          [u](const StrictPareto& d) { return d.scale * std::pow(1.0 - u, -d.gamma); },
          [u](const HallPerturbedPareto&) { return hall_upper_quantile(1.0 - u); },
      },
      spec.kind());
}

double cdf(const DistributionSpec& spec, double x) {
  if (std::isnan(x)) throw DomainError("cdf: NaN argument");
  return std::visit(
      Overloaded{
          [x](const Exponential& d) { return x <= 0.0 ? 0.0 : -std::expm1(-x / d.gamma); },
          [x](const UniformSpacing& d) { return std::clamp(x / (2.0 * d.gamma), 0.0, 1.0); },
          [x](const Bernoulli& d) { return x < 0.0 ? 0.0 : (x < 1.0 ? 1.0 - d.gamma : 1.0); },
          [x](const GammaSpacing& d) {
            if (x <= 0.0) return 0.0;
            if (std::isinf(x)) return 1.0;
            return boost::math::gamma_p(d.shape, x * d.shape / d.gamma);
          },
          [x](const StrictPareto& d) {
            return x <= d.scale ? 0.0 : -std::expm1(std::log(d.scale / x) / d.gamma);
          },
          [x](const HallPerturbedPareto&) {
            if (x <= kHallLower) return 0.0;
            // (1 + v/2)/sqrt(v) = x  =>  sqrt(v) = 2 / (x + sqrt(x^2 - 2)).
            const double root = 2.0 / (x + std::sqrt(x * x - 2.0));
            return 1.0 - root * root;
          },
      },
      spec.kind());
}

double moment(const DistributionSpec& spec, unsigned k) {
  if (k == 0) return 1.0;
  const double kd = static_cast<double>(k);
  return std::visit(
      Overloaded{
          [&](const Exponential& d) { return std::tgamma(kd + 1.0) * std::pow(d.gamma, kd); },
          [&](const UniformSpacing& d) { return std::pow(2.0 * d.gamma, kd) / (kd + 1.0); },
          [&](const Bernoulli& d) { return d.gamma; },
          [&](const GammaSpacing& d) {
            double rising = 1.0;
            for (unsigned i = 0; i < k; ++i) rising *= d.shape + i;
            return rising * std::pow(d.gamma / d.shape, kd);
          },
          [&](const StrictPareto& d) {
            const double alpha = 1.0 / d.gamma;
            if (kd >= alpha) return kInf;
            return std::pow(d.scale, kd) * alpha / (alpha - kd);
          },
          [&](const HallPerturbedPareto&) {
            // integral_0^1 (u^(-1/2) + u^(1/2)/2) du; diverges for k >= 2.
            return k == 1 ? 7.0 / 3.0 : kInf;
          },
      },
      spec.kind());
}

double variance(const DistributionSpec& spec) {
  const double m1 = moment(spec, 1);
  const double m2 = moment(spec, 2);
  if (std::isinf(m2)) return kInf;
  return m2 - m1 * m1;
}

double log_mgf(const DistributionSpec& spec, double t) {
  if (std::isnan(t)) throw DomainError("log_mgf: NaN argument");
  if (t == 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [t](const Exponential& d) { return d.gamma * t < 1.0 ? -std::log1p(-d.gamma * t) : kInf; },
          [t](const UniformSpacing& d) {
            const double x = 2.0 * d.gamma * t;
            if (x > 0.0) return x + std::log(-std::expm1(-x)) - std::log(x);
            return std::log(-std::expm1(x)) - std::log(-x);
          },
          [t](const Bernoulli& d) {
            const double p = d.gamma;
            if (t > 0.0) return t + std::log(p + (1.0 - p) * std::exp(-t));
            return std::log1p(p * std::expm1(t));
          },
          [t](const GammaSpacing& d) {
            const double rate = d.shape / d.gamma;
            return t < rate ? -d.shape * std::log1p(-t / rate) : kInf;
          },
          [t](const auto&) -> double {
            if (t > 0.0) return kInf;
            throw NotImplementedError("log_mgf: negative argument for iid comparison laws");
          },
      },
      spec.kind());
}

double mgf(const DistributionSpec& spec, double t) {
  const double lm = log_mgf(spec, t);
  return std::isinf(lm) ? kInf : std::exp(lm);
}

double tilted_mean(const DistributionSpec& spec, double t) {
  return std::visit(
      Overloaded{
          [t](const Exponential& d) { return d.gamma * t < 1.0 ? d.gamma / (1.0 - d.gamma * t) : kInf; },
          [t](const UniformSpacing& d) {
            const double a = 2.0 * d.gamma;
            const double x = a * t;
            if (std::abs(x) < 1e-4) return a * (0.5 + x / 12.0 - x * x * x / 720.0);
            return a * (1.0 / -std::expm1(-x) - 1.0 / x);
          },
          [t](const Bernoulli& d) {
            const double p = d.gamma;
            if (p == 1.0) return 1.0;
            if (t > 0.0) return 1.0 / (1.0 + (1.0 - p) / p * std::exp(-t));
            const double et = p * std::exp(t);
            return et / (1.0 - p + et);
          },
          [t](const GammaSpacing& d) {
            const double rate = d.shape / d.gamma;
            return t < rate ? d.shape / (rate - t) : kInf;
          },
          [](const auto&) -> double {
            throw NotImplementedError("tilted_mean: not available for iid comparison laws");
          },
      },
      spec.kind());
}

std::complex<double> characteristic_function(const DistributionSpec& spec, double t) {
  using cd = std::complex<double>;
  return std::visit(
      Overloaded{
          [t](const Exponential& d) { return 1.0 / cd(1.0, -d.gamma * t); },
          [t](const UniformSpacing& d) {
            const double x = 2.0 * d.gamma * t;
            if (x == 0.0) return cd(1.0, 0.0);
            // (e^{ix} - 1)/(ix) = sin(x)/x + i (1 - cos x)/x
            const double half = std::sin(0.5 * x);
            return cd(std::sin(x) / x, 2.0 * half * half / x);
          },
          [t](const Bernoulli& d) {
            return cd(1.0 - d.gamma, 0.0) + d.gamma * std::polar(1.0, t);
          },
          [t](const GammaSpacing& d) {
            const double rate = d.shape / d.gamma;
            return std::exp(-d.shape * std::log(cd(1.0, -t / rate)));
          },
          [](const auto&) -> cd {
            throw NotImplementedError(
                "characteristic_function: only spacing laws have a closed form");
          },
      },
      spec.kind());
}

std::vector<std::size_t> random_permutation(std::size_t n, const SeedSpec& seed) {
  if (n == 0) throw DomainError("random_permutation: n must be positive");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Xoshiro256 engine(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[engine.below(i + 1)]);
  }
  return perm;
}

}  // namespace renyi
