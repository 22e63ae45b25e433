#include "renyi/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <set>
#include <string>

#include "renyi/errors.hpp"
#include "renyi/estimators.hpp"
#include "renyi/format.hpp"
#include "renyi/large_deviations.hpp"
#include "renyi/parallel.hpp"
#include "renyi/stats.hpp"

namespace renyi {
namespace {

constexpr double kKsAlpha = 0.01;

// Keeps one replication chunk at roughly 32 MB of doubles.
std::size_t chunk_for(std::size_t record_len) {
  return std::max<std::size_t>(16, (std::size_t{1} << 22) / std::max<std::size_t>(record_len, 1));
}

std::string law_key(const ExperimentConfig& cfg, const DistributionSpec& spec) {
  return std::string(to_string(cfg.experiment)) + "/" + spec.to_string();
}

std::vector<DistributionSpec> default_model3_laws() {
  return {DistributionSpec::uniform(0.5), DistributionSpec::bernoulli(0.5),
          DistributionSpec::exponential(0.5)};
}

std::vector<DistributionSpec> default_iid_laws() {
  return {DistributionSpec::strict_pareto(0.5, 1.0), DistributionSpec::hall()};
}

std::vector<std::size_t> hill_rows(const ExperimentConfig& cfg) {
  if (!cfg.k_grid.empty()) return cfg.k_grid;
  std::vector<std::size_t> all(cfg.n);
  for (std::size_t k = 1; k <= cfg.n; ++k) all[k - 1] = k;
  return all;
}

struct PairRecord {
  double x1 = 0.0;
  double x2 = 0.0;
};

// (X_{delta_1,n}, X_{delta_2,n}) for the first two entries of a uniform
// permutation, generating only Z_1..Z_max(delta).
PairRecord draw_permuted_pair(const DistributionSpec& spec, std::size_t n, const SeedSpec& seed) {
  Sampler sampler(spec, seed);
  auto& engine = sampler.engine();
  const std::size_t d1 = engine.below(n);
  std::size_t d2 = engine.below(n - 1);
  if (d2 >= d1) ++d2;
  const std::size_t last = std::max(d1, d2);
  PairRecord out;
  double acc = 0.0;
  for (std::size_t j = 0; j <= last; ++j) {
    acc += sampler() / static_cast<double>(n - j);
    if (j == d1) out.x1 = acc;
    if (j == d2) out.x2 = acc;
  }
  return out;
}

std::vector<PairRecord> permuted_pairs(const ExperimentConfig& cfg, const DistributionSpec& spec,
                                       std::size_t n) {
  const std::string key = law_key(cfg, spec) + "/n=" + std::to_string(n);
  std::vector<PairRecord> out;
  out.reserve(cfg.reps);
  replicate_ordered<PairRecord>(
      cfg.reps, cfg.workers,
      [&](std::size_t i) { return draw_permuted_pair(spec, n, replication_seed(cfg, key, i)); },
      [&](std::size_t, PairRecord r) { out.push_back(r); });
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Names and text forms

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::variance_curve: return "variance_curve";
    case ExperimentKind::hill_plot: return "hill_plot";
    case ExperimentKind::coverage: return "coverage";
    case ExperimentKind::theorem1_ks: return "theorem1_ks";
    case ExperimentKind::theorem2_moments: return "theorem2_moments";
    case ExperimentKind::ld_check: return "ld_check";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (const auto kind : {ExperimentKind::variance_curve, ExperimentKind::hill_plot,
                          ExperimentKind::coverage, ExperimentKind::theorem1_ks,
                          ExperimentKind::theorem2_moments, ExperimentKind::ld_check}) {
    if (to_string(kind) == text) return kind;
  }
  throw ConfigError("unknown experiment '" + std::string(text) + "'");
}

std::string_view to_string(SampleMode mode) { return mode == SampleMode::iid ? "iid" : "model3"; }

SampleMode parse_sample_mode(std::string_view text) {
  if (text == "iid") return SampleMode::iid;
  if (text == "model3") return SampleMode::model3;
  throw ConfigError("unknown sample mode '" + std::string(text) + "' (expected iid or model3)");
}

std::vector<std::size_t> log_spaced_grid(std::size_t lo, std::size_t hi, std::size_t count) {
  if (lo < 1 || hi < lo || count < 2) throw ConfigError("log_spaced_grid: bad range");
  std::set<std::size_t> grid;
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  for (std::size_t i = 0; i < count; ++i) {
    const double v = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    grid.insert(std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(v)), lo, hi));
  }
  return {grid.begin(), grid.end()};
}

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind, SampleMode mode) {
  ExperimentConfig cfg;
  cfg.experiment = kind;
  cfg.mode = mode;
  cfg.specs = mode == SampleMode::iid ? default_iid_laws() : default_model3_laws();
  switch (kind) {
    case ExperimentKind::variance_curve:
      cfg.mode = SampleMode::model3;
      cfg.specs = default_model3_laws();
      cfg.n = 1000;
      cfg.reps = 1000;
      for (int i = 200; i <= 990; ++i) cfg.s_grid.push_back(i / 1000.0);
      break;
    case ExperimentKind::hill_plot:
      cfg.n = 2000;
      cfg.reps = 1;
      break;
    case ExperimentKind::coverage:
      cfg.n = 2000;
      cfg.reps = 2000;
      cfg.k_grid = log_spaced_grid(10, cfg.n);
      break;
    case ExperimentKind::theorem1_ks:
      cfg.mode = SampleMode::model3;
      cfg.specs = default_model3_laws();
      cfg.n_grid = {50, 200, 2000};
      cfg.n = 2000;
      cfg.reps = 100000;
      break;
    case ExperimentKind::theorem2_moments:
      cfg.mode = SampleMode::model3;
      cfg.specs = {DistributionSpec::uniform(0.5), DistributionSpec::exponential(0.5)};
      cfg.n_grid = {10, 100, 1000};
      cfg.n = 1000;
      cfg.reps = 100000;
      break;
    case ExperimentKind::ld_check:
      cfg.mode = SampleMode::model3;
      cfg.specs = {DistributionSpec::uniform(0.5), DistributionSpec::bernoulli(0.5),
                   DistributionSpec::exponential(0.5), DistributionSpec::gamma_law(2.0, 0.5)};
      cfg.k_grid = {5, 10, 20, 40};
      cfg.n = 40;
      cfg.reps = 100000;
      cfg.ld_c = 0.2;
      break;
  }
  return cfg;
}

void ExperimentConfig::validate() const {
  if (reps < 1) throw ConfigError("reps must be at least 1");
  if (n < 1) throw ConfigError("n must be at least 1");
  if (specs.empty()) throw ConfigError("at least one distribution is required");
  if (!(scale_c > 0.0) || !std::isfinite(scale_c)) throw ConfigError("scale C must be positive");

  const bool needs_spacing = mode == SampleMode::model3 ||
                             experiment == ExperimentKind::variance_curve ||
                             experiment == ExperimentKind::theorem1_ks ||
                             experiment == ExperimentKind::theorem2_moments ||
                             experiment == ExperimentKind::ld_check;
  for (const auto& spec : specs) {
    if (needs_spacing && !spec.is_spacing_law()) {
      throw ConfigError(std::string(to_string(experiment)) + " needs spacing laws; " +
                        spec.to_string() + " is an iid comparison law");
    }
    if (!needs_spacing && spec.is_spacing_law()) {
      throw ConfigError("iid mode needs a heavy-tailed law (pareto or hall), got " +
                        spec.to_string());
    }
  }

  switch (experiment) {
    case ExperimentKind::variance_curve:
      if (s_grid.empty()) throw ConfigError("variance_curve needs a nonempty s grid");
      for (const double s : s_grid) {
        if (!(s > 0.0 && s < 1.0)) throw ConfigError("s grid values must lie in (0, 1)");
        if (static_cast<double>(n) * s < 1e-9) throw ConfigError("ceil(n s) must be at least 1");
      }
      break;
    case ExperimentKind::hill_plot:
    case ExperimentKind::coverage:
      for (const std::size_t k : k_grid) {
        if (k < 1 || k > n) throw ConfigError("k grid values must lie in 1..n");
        if (experiment == ExperimentKind::coverage && k < 2) {
          throw ConfigError("coverage needs k >= 2 for the spacing variance");
        }
      }
      if (experiment == ExperimentKind::coverage) {
        if (k_grid.empty()) throw ConfigError("coverage needs a nonempty k grid");
        if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
      }
      break;
    case ExperimentKind::theorem1_ks:
    case ExperimentKind::theorem2_moments:
      if (n_grid.empty()) throw ConfigError("needs a nonempty n grid");
      for (const std::size_t m : n_grid) {
        if (m < 2) throw ConfigError("n grid values must be at least 2");
      }
      break;
    case ExperimentKind::ld_check:
      if (k_grid.empty()) throw ConfigError("ld_check needs a nonempty k grid");
      for (const std::size_t k : k_grid) {
        if (k < 1) throw ConfigError("k grid values must be positive");
      }
      if (!(ld_c > 0.0) || !std::isfinite(ld_c)) throw ConfigError("ld_c must be positive");
      break;
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json doc;
  doc["experiment"] = std::string(to_string(experiment));
  doc["mode"] = std::string(to_string(mode));
  doc["specs"] = nlohmann::json::array();
  for (const auto& s : specs) doc["specs"].push_back(s.to_string());
  doc["n"] = n;
  doc["reps"] = reps;
  doc["eps"] = eps;
  doc["s_grid"] = s_grid;
  doc["k_grid"] = k_grid;
  doc["n_grid"] = n_grid;
  doc["ld_c"] = ld_c;
  doc["scale_c"] = scale_c;
  doc["master_seed"] = master_seed;
  doc["stream_offset"] = stream_offset;
  doc["workers"] = workers;
  return doc;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
  static const std::set<std::string> known = {
      "experiment", "mode",    "specs",   "n",           "reps",          "eps",    "s_grid",
      "k_grid",     "n_grid",  "ld_c",    "scale_c",     "master_seed",   "stream_offset",
      "workers"};
  if (!doc.is_object()) throw ConfigError("experiment config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (known.count(key) == 0) throw ConfigError("unknown config key '" + key + "'");
  }
  try {
    ExperimentConfig cfg =
        defaults(parse_experiment_kind(doc.at("experiment").get<std::string>()),
                 doc.contains("mode") ? parse_sample_mode(doc["mode"].get<std::string>())
                                      : SampleMode::model3);
    if (doc.contains("mode")) cfg.mode = parse_sample_mode(doc["mode"].get<std::string>());
    if (doc.contains("specs")) {
      cfg.specs.clear();
      for (const auto& s : doc["specs"]) cfg.specs.push_back(DistributionSpec::parse(s.get<std::string>()));
    }
    if (doc.contains("n")) cfg.n = doc["n"].get<std::size_t>();
    if (doc.contains("reps")) cfg.reps = doc["reps"].get<std::size_t>();
    if (doc.contains("eps")) cfg.eps = doc["eps"].get<double>();
    if (doc.contains("s_grid")) cfg.s_grid = doc["s_grid"].get<std::vector<double>>();
    if (doc.contains("k_grid")) cfg.k_grid = doc["k_grid"].get<std::vector<std::size_t>>();
    if (doc.contains("n_grid")) cfg.n_grid = doc["n_grid"].get<std::vector<std::size_t>>();
    if (doc.contains("ld_c")) cfg.ld_c = doc["ld_c"].get<double>();
    if (doc.contains("scale_c")) cfg.scale_c = doc["scale_c"].get<double>();
    if (doc.contains("master_seed")) cfg.master_seed = doc["master_seed"].get<std::uint64_t>();
    if (doc.contains("stream_offset")) cfg.stream_offset = doc["stream_offset"].get<std::uint64_t>();
    if (doc.contains("workers")) cfg.workers = doc["workers"].get<unsigned>();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed experiment config: ") + e.what());
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
}

std::string ExperimentConfig::to_text() const { return to_json().dump(); }

ExperimentConfig ExperimentConfig::from_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("experiment config is not valid JSON: ") + e.what());
  }
  return from_json(doc);
}

SeedSpec replication_seed(const ExperimentConfig& cfg, std::string_view key, std::uint64_t rep) {
  const std::uint64_t family = static_cast<std::uint64_t>(fnv1a32(key)) << 32;
  return {cfg.master_seed, family + cfg.stream_offset + rep};
}

HeavySample draw_heavy_sample(const ExperimentConfig& cfg, const DistributionSpec& spec,
                              std::string_view key, std::uint64_t rep) {
  Sampler sampler(spec, replication_seed(cfg, key, rep));
  std::vector<double> values(cfg.n);
  sampler.fill(values);
  if (cfg.mode == SampleMode::iid) {
    std::sort(values.begin(), values.end());
    return HeavySample::from_sorted(std::move(values), spec.lower_endpoint());
  }
  return heavy_sample(generalized_renyi(std::move(values)), cfg.scale_c);
}

std::vector<double> hill_replicates(const ExperimentConfig& cfg, const DistributionSpec& spec,
                                    std::size_t k) {
  ExperimentConfig plot = cfg;
  plot.experiment = ExperimentKind::hill_plot;
  const std::string key = law_key(plot, spec);
  std::vector<double> out;
  out.reserve(cfg.reps);
  replicate_ordered<double>(
      cfg.reps, cfg.workers,
      [&](std::size_t i) { return hill(draw_heavy_sample(plot, spec, key, i), k); },
      [&](std::size_t, double v) { out.push_back(v); });
  return out;
}

// ---------------------------------------------------------------------------
// Variance curve of the quantile estimator

ReportTable run_variance_curve(const ExperimentConfig& cfg) {
  std::vector<std::string> columns = {"s", "h"};
  for (const auto& spec : cfg.specs) {
    columns.push_back("var:" + spec.to_string());
    columns.push_back("ratio:" + spec.to_string());
  }
  ReportTable table(columns);

  const std::size_t grid = cfg.s_grid.size();
  std::vector<std::size_t> index(grid);
  std::vector<double> denom(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    index[i] = upper_index(cfg.n, cfg.s_grid[i]);
    denom[i] = -std::log1p(-cfg.s_grid[i]);
  }
  const double root_n = std::sqrt(static_cast<double>(cfg.n));

  std::vector<std::vector<RunningStats>> stats(cfg.specs.size(), std::vector<RunningStats>(grid));
  for (std::size_t L = 0; L < cfg.specs.size(); ++L) {
    const auto& spec = cfg.specs[L];
    const double gamma = spec.gamma();
    const double sd = std::sqrt(variance(spec));
    const std::string key = law_key(cfg, spec);
    replicate_ordered<std::vector<double>>(
        cfg.reps, cfg.workers,
        [&](std::size_t rep) {
          Sampler sampler(spec, replication_seed(cfg, key, rep));
          std::vector<double> z(cfg.n);
          sampler.fill(z);
          const RenyiSample r = generalized_renyi(std::move(z));
          std::vector<double> v(grid);
          for (std::size_t i = 0; i < grid; ++i) {
            v[i] = root_n * (r.x()[index[i] - 1] / denom[i] - gamma) / sd;
          }
          return v;
        },
        [&](std::size_t, std::vector<double> v) {
          for (std::size_t i = 0; i < grid; ++i) stats[L][i].push(v[i]);
        },
        chunk_for(grid));
  }

  for (std::size_t i = 0; i < grid; ++i) {
    const double h = h_function(cfg.s_grid[i]);
    std::vector<Cell> row = {cfg.s_grid[i], h};
    for (std::size_t L = 0; L < cfg.specs.size(); ++L) {
      const double var = stats[L][i].variance();
      row.emplace_back(var);
      row.emplace_back(var / h);
    }
    table.add_row(std::move(row));
  }
  if (cfg.reps < 2) {
    table.meta()["degenerate"] = "single replication: variances reported as 0";
  }
  return table;
}

// ---------------------------------------------------------------------------
// Hill plots

ReportTable run_hill_plot(const ExperimentConfig& cfg) {
  std::vector<std::string> columns = {"k"};
  for (const auto& spec : cfg.specs) columns.push_back("hill:" + spec.to_string());
  ReportTable table(columns);

  const std::vector<std::size_t> ks = hill_rows(cfg);
  std::vector<std::vector<double>> sums(cfg.specs.size(), std::vector<double>(ks.size(), 0.0));
  for (std::size_t L = 0; L < cfg.specs.size(); ++L) {
    const auto& spec = cfg.specs[L];
    const std::string key = law_key(cfg, spec);
    replicate_ordered<std::vector<double>>(
        cfg.reps, cfg.workers,
        [&](std::size_t rep) {
          const std::vector<double> path = hill_path(draw_heavy_sample(cfg, spec, key, rep));
          std::vector<double> picked(ks.size());
          for (std::size_t i = 0; i < ks.size(); ++i) picked[i] = path[ks[i] - 1];
          return picked;
        },
        [&](std::size_t, std::vector<double> picked) {
          for (std::size_t i = 0; i < ks.size(); ++i) sums[L][i] += picked[i];
        },
        chunk_for(ks.size()));
  }

  const double reps = static_cast<double>(cfg.reps);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::vector<Cell> row = {static_cast<std::int64_t>(ks[i])};
    for (std::size_t L = 0; L < cfg.specs.size(); ++L) row.emplace_back(sums[L][i] / reps);
    table.add_row(std::move(row));
  }
  table.meta()["mode"] = std::string(to_string(cfg.mode));
  table.meta()["averaged_realizations"] = cfg.reps;
  return table;
}

// ---------------------------------------------------------------------------
// Coverage frequencies

ReportTable run_coverage(const ExperimentConfig& cfg) {
  std::vector<std::string> columns = {"k"};
  for (const auto& spec : cfg.specs) {
    const std::string name = spec.to_string();
    columns.push_back("cov_spacing:" + name);
    columns.push_back("cov_hill:" + name);
    columns.push_back("hits_spacing:" + name);
    columns.push_back("hits_hill:" + name);
  }
  ReportTable table(columns);

  const auto& ks = cfg.k_grid;
  std::vector<std::vector<std::int64_t>> hits(cfg.specs.size(),
                                              std::vector<std::int64_t>(2 * ks.size(), 0));
  for (std::size_t L = 0; L < cfg.specs.size(); ++L) {
    const auto& spec = cfg.specs[L];
    const double gamma = spec.gamma();
    const std::string key = law_key(cfg, spec);
    replicate_ordered<std::vector<char>>(
        cfg.reps, cfg.workers,
        [&](std::size_t rep) {
          const HeavySample h = draw_heavy_sample(cfg, spec, key, rep);
          const std::vector<double> path = hill_path(h);
          const std::vector<double> sigma = spacing_sigma_path(h);
          std::vector<char> covered(2 * ks.size());
          for (std::size_t i = 0; i < ks.size(); ++i) {
            const std::size_t k = ks[i];
            const EstimateWithCI a = ci_spacing(path[k - 1], sigma[k - 1], k, cfg.eps);
            const EstimateWithCI b = ci_hill_self(path[k - 1], k, cfg.eps);
            covered[2 * i] = a.lower <= gamma && gamma <= a.upper;
            covered[2 * i + 1] = b.lower <= gamma && gamma <= b.upper;
          }
          return covered;
        },
        [&](std::size_t, std::vector<char> covered) {
          for (std::size_t i = 0; i < covered.size(); ++i) hits[L][i] += covered[i];
        },
        chunk_for(ks.size()));
  }

  const double reps = static_cast<double>(cfg.reps);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::vector<Cell> row = {static_cast<std::int64_t>(ks[i])};
    for (std::size_t L = 0; L < cfg.specs.size(); ++L) {
      row.emplace_back(static_cast<double>(hits[L][2 * i]) / reps);
      row.emplace_back(static_cast<double>(hits[L][2 * i + 1]) / reps);
      row.emplace_back(hits[L][2 * i]);
      row.emplace_back(hits[L][2 * i + 1]);
    }
    table.add_row(std::move(row));
  }
  table.meta()["mode"] = std::string(to_string(cfg.mode));
  table.meta()["eps"] = cfg.eps;
  return table;
}

// ---------------------------------------------------------------------------
// Distributional checks

ReportTable run_theorem1_ks(const ExperimentConfig& cfg) {
  ReportTable table({"law", "n", "reps", "ks", "ks_crit", "corr", "mean_x1x2", "se_x1x2",
                     "c_exact", "psi_re", "psi_im", "ecf_re", "ecf_im", "limit_re", "limit_im",
                     "joint_ecf_re", "joint_ecf_im", "joint_limit_re", "joint_limit_im"});
  for (const auto& spec : cfg.specs) {
    const double gamma = spec.gamma();
    const DistributionSpec limit_law = DistributionSpec::exponential(gamma);
    for (const std::size_t n : cfg.n_grid) {
      const std::vector<PairRecord> pairs = permuted_pairs(cfg, spec, n);
      std::vector<double> x1(pairs.size());
      std::vector<double> x2(pairs.size());
      std::vector<double> prod(pairs.size());
      std::complex<double> ecf(0.0, 0.0);
      std::complex<double> joint(0.0, 0.0);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        x1[i] = pairs[i].x1;
        x2[i] = pairs[i].x2;
        prod[i] = x1[i] * x2[i];
        ecf += std::polar(1.0, x1[i]);
        joint += std::polar(1.0, x1[i] - x2[i]);
      }
      const double reps = static_cast<double>(pairs.size());
      ecf /= reps;
      joint /= reps;

      const MeanVariance m1 = mean_variance(x1);
      const MeanVariance m2 = mean_variance(x2);
      const MeanVariance mp = mean_variance(prod);
      const double cov = mp.mean - m1.mean * m2.mean;
      const double corr =
          m1.variance > 0.0 && m2.variance > 0.0 ? cov / std::sqrt(m1.variance * m2.variance) : 0.0;
      const double ks =
          ks_statistic(x1, [&](double v) { return cdf(limit_law, v); });
      const std::complex<double> psi = psi_n(spec, n, 1.0);
      const std::complex<double> limit = 1.0 / std::complex<double>(1.0, -gamma);
      const std::complex<double> joint_limit = limit * (1.0 / std::complex<double>(1.0, gamma));

      table.add_row({spec.to_string(), static_cast<std::int64_t>(n),
                     static_cast<std::int64_t>(pairs.size()), ks, ks_critical(kKsAlpha, reps),
                     corr, mp.mean, std::sqrt(mp.variance / reps),
                     cross_moment_recursion(spec, n).back(), psi.real(), psi.imag(), ecf.real(),
                     ecf.imag(), limit.real(), limit.imag(), joint.real(), joint.imag(),
                     joint_limit.real(), joint_limit.imag()});
    }
  }
  return table;
}

ReportTable run_theorem2_moments(const ExperimentConfig& cfg) {
  ReportTable table({"law", "n", "m2_exact", "m2_mc", "m2_se", "m2_limit", "c_exact", "c_mc",
                     "c_se", "c_limit"});
  for (const auto& spec : cfg.specs) {
    const double gamma = spec.gamma();
    for (const std::size_t n : cfg.n_grid) {
      const std::vector<PairRecord> pairs = permuted_pairs(cfg, spec, n);
      std::vector<double> sq(pairs.size());
      std::vector<double> prod(pairs.size());
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        sq[i] = pairs[i].x1 * pairs[i].x1;
        prod[i] = pairs[i].x1 * pairs[i].x2;
      }
      const double reps = static_cast<double>(pairs.size());
      const MeanVariance ms = mean_variance(sq);
      const MeanVariance mp = mean_variance(prod);
      table.add_row({spec.to_string(), static_cast<std::int64_t>(n),
                     moment_recursion(spec, 2, n)(2, n), ms.mean, std::sqrt(ms.variance / reps),
                     2.0 * gamma * gamma, cross_moment_recursion(spec, n).back(), mp.mean,
                     std::sqrt(mp.variance / reps), gamma * gamma});
    }
  }
  return table;
}

ReportTable run_ld_check(const ExperimentConfig& cfg) {
  ReportTable table({"law", "k", "y", "mc", "mc_se", "events", "exact", "limit"});
  for (const auto& spec : cfg.specs) {
    const double y = (1.0 + cfg.ld_c) * spec.gamma();
    const double limit = -upper_tail_rate(spec, y);
    const bool has_exact = std::holds_alternative<Exponential>(spec.kind()) ||
                           std::holds_alternative<GammaSpacing>(spec.kind());
    for (const std::size_t k : cfg.k_grid) {
      const std::string key = law_key(cfg, spec) + "/k=" + std::to_string(k);
      const TailEstimate mc =
          mc_tail_logprob(spec, k, y, cfg.reps, replication_seed(cfg, key, 0), cfg.workers);
      std::vector<Cell> row = {spec.to_string(), static_cast<std::int64_t>(k), y};
      if (mc.status == TailEstimate::Status::ok) {
        row.emplace_back(mc.estimate);
        row.emplace_back(mc.std_error);
      } else {
        row.emplace_back(Missing{"insufficient_events"});
        row.emplace_back(Missing{"insufficient_events"});
      }
      row.emplace_back(static_cast<std::int64_t>(mc.events));
      if (has_exact) {
        row.emplace_back(exact_hill_tail(spec, k, y) / static_cast<double>(k));
      } else {
        row.emplace_back(Missing{"no_closed_form"});
      }
      if (std::isfinite(limit)) {
        row.emplace_back(limit);
      } else {
        row.emplace_back(Missing{"infinite_rate"});
      }
      table.add_row(std::move(row));
    }
  }
  return table;
}

ReportTable run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  ReportTable table;
  switch (cfg.experiment) {
    case ExperimentKind::variance_curve: table = run_variance_curve(cfg); break;
    case ExperimentKind::hill_plot: table = run_hill_plot(cfg); break;
    case ExperimentKind::coverage: table = run_coverage(cfg); break;
    case ExperimentKind::theorem1_ks: table = run_theorem1_ks(cfg); break;
    case ExperimentKind::theorem2_moments: table = run_theorem2_moments(cfg); break;
    case ExperimentKind::ld_check: table = run_ld_check(cfg); break;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  table.meta()["experiment"] = std::string(to_string(cfg.experiment));
  table.meta()["config"] = cfg.to_text();
  table.meta()["master_seed"] = cfg.master_seed;
  table.meta()["workers"] = resolve_workers(cfg.workers);
  table.meta()["wall_time_s"] = elapsed.count();
  return table;
}

}  // namespace renyi
