#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "renyi/distribution.hpp"
#include "renyi/renyi.hpp"
#include "renyi/report.hpp"

namespace renyi {

inline constexpr std::uint64_t kDefaultSeed = 12345;

enum class ExperimentKind {
  variance_curve,
  hill_plot,
  coverage,
  theorem1_ks,
  theorem2_moments,
  ld_check,
};

/// model3: W = C exp(X) from generalized Renyi statistics.
/// iid: sorted iid draws from a heavy-tailed law (Pareto, Hall class).
enum class SampleMode { model3, iid };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);
std::string_view to_string(SampleMode mode);
SampleMode parse_sample_mode(std::string_view text);

/// Parameters of one Monte Carlo study. Replication i of law L draws from
/// stream (fnv1a32(experiment/L[/n]) << 32) + stream_offset + i.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::variance_curve;
  SampleMode mode = SampleMode::model3;
  std::vector<DistributionSpec> specs;
  std::size_t n = 2000;
  std::size_t reps = 2000;
  double eps = 0.1;
  std::vector<double> s_grid;        ///< variance_curve
  std::vector<std::size_t> k_grid;   ///< hill_plot (empty: every k), coverage, ld_check
  std::vector<std::size_t> n_grid;   ///< theorem1_ks, theorem2_moments
  double ld_c = 0.2;                 ///< ld_check evaluates y = (1 + ld_c) gamma
  double scale_c = 1.0;              ///< C for spacing-model samples
  std::uint64_t master_seed = kDefaultSeed;
  std::uint64_t stream_offset = 0;
  unsigned workers = 0;              ///< 0: hardware concurrency; never affects results

  /// Desk-scale defaults for each experiment.
  static ExperimentConfig defaults(ExperimentKind kind, SampleMode mode = SampleMode::model3);

  /// Throws ConfigError describing the first problem found.
  void validate() const;

  [[nodiscard]] nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& doc);
  /// Single-line JSON; round-trips exactly through from_text.
  [[nodiscard]] std::string to_text() const;
  static ExperimentConfig from_text(std::string_view text);

  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.to_text() == b.to_text();
  }
};

/// 50 log-spaced integers in [lo, hi], rounded and deduplicated.
std::vector<std::size_t> log_spaced_grid(std::size_t lo, std::size_t hi, std::size_t count = 50);

/// Seed for replication `rep` of the stream family named by `key`.
SeedSpec replication_seed(const ExperimentConfig& cfg, std::string_view key, std::uint64_t rep);

/// The heavy sample used by hill_plot and coverage for law `spec`, replication `rep`.
HeavySample draw_heavy_sample(const ExperimentConfig& cfg, const DistributionSpec& spec,
                              std::string_view key, std::uint64_t rep);

/// Per-replication Hill estimates at k for one law, on the hill_plot streams.
std::vector<double> hill_replicates(const ExperimentConfig& cfg, const DistributionSpec& spec,
                                    std::size_t k);

/// Per s: empirical variance over reps of sqrt(n)(gamma_tilde(s) - gamma)/sd(Z).
ReportTable run_variance_curve(const ExperimentConfig& cfg);
/// Per k: Hill estimate averaged over reps realizations (reps = 1: one path).
ReportTable run_hill_plot(const ExperimentConfig& cfg);
/// Per k: coverage of the spacing-variance and Hill-self intervals.
ReportTable run_coverage(const ExperimentConfig& cfg);
/// Per (law, n): KS distance of X_{delta_1,n} to Exp(gamma), correlation of
/// (X_{delta_1,n}, X_{delta_2,n}), exact psi_n(1) and empirical
/// characteristic functions against their limits.
ReportTable run_theorem1_ks(const ExperimentConfig& cfg);
/// Per (law, n): exact m_{2,n} and C_n against Monte Carlo and the limits.
ReportTable run_theorem2_moments(const ExperimentConfig& cfg);
/// Per (law, k): Monte Carlo and exact (1/k) log P(gamma_hat >= y) against -I(y).
ReportTable run_ld_check(const ExperimentConfig& cfg);

/// Validates, dispatches on cfg.experiment and fills the metadata block.
ReportTable run_experiment(const ExperimentConfig& cfg);

}  // namespace renyi
