#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "renyi/distribution.hpp"
#include "renyi/errors.hpp"
#include "renyi/estimators.hpp"
#include "renyi/experiments.hpp"
#include "renyi/format.hpp"
#include "renyi/large_deviations.hpp"
#include "renyi/likelihood.hpp"
#include "renyi/renyi.hpp"
#include "renyi/report.hpp"

namespace renyi::cli {
namespace {

// Bad input data: exit code 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flag combinations CLI11 cannot express: exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Output {
  std::string format = "csv";
  std::string path;
};

void add_output_flags(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", o.path, "Write to this file instead of stdout");
}

void emit(const ReportTable& table, const Output& o, std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.path.empty()) {
    file.open(o.path, std::ios::binary);
    if (!file) throw DataError("cannot open output file '" + o.path + "'");
    sink = &file;
  }
  if (o.format == "json") {
    table.write_json(*sink);
  } else {
    table.write_csv(*sink);
  }
  sink->flush();
  if (!*sink) throw DataError("failed writing output");
}

std::string join_invocation(const std::vector<std::string>& args) {
  std::string text = "renyi";
  for (const auto& a : args) {
    text += ' ';
    const bool plain = !a.empty() && a.find_first_of(" \t\"'\\") == std::string::npos;
    text += plain ? a : "'" + a + "'";
  }
  return text;
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw UsageError("RENYI_SEED must be an unsigned 64-bit integer, got '" + text + "'");
  }
  return value;
}

struct DataColumn {
  std::vector<double> values;
  std::vector<std::size_t> lines;
};

// Newline-delimited decimals; blank lines and '#' comments are skipped.
DataColumn read_column(std::istream& in, const std::string& name) {
  DataColumn col;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string field = line.substr(first, last - first + 1);
    double v = 0.0;
    try {
      v = parse_real(field);
    } catch (const ParameterError&) {
      throw DataError(name + ":" + std::to_string(number) + ": cannot parse '" + field +
                      "' as a number");
    }
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw DataError(name + ":" + std::to_string(number) + ": value " + field +
                      " is not a finite positive number");
    }
    col.values.push_back(v);
    col.lines.push_back(number);
  }
  if (in.bad()) throw DataError(name + ": read error");
  if (col.values.empty()) throw DataError(name + ": no data values");
  return col;
}

HeavySample load_sample(const std::string& input, std::istream& in, double c, bool allow_unsorted) {
  DataColumn col;
  const std::string name = input.empty() || input == "-" ? "<stdin>" : input;
  if (name == "<stdin>") {
    col = read_column(in, name);
  } else {
    std::ifstream file(input);
    if (!file) throw DataError("cannot open input file '" + input + "'");
    col = read_column(file, input);
  }
  if (allow_unsorted) {
    std::sort(col.values.begin(), col.values.end());
  } else {
    for (std::size_t i = 1; i < col.values.size(); ++i) {
      if (col.values[i] < col.values[i - 1]) {
        throw DataError(name + ":" + std::to_string(col.lines[i]) + ": value " +
                        format_real(col.values[i]) + " is below the previous value " +
                        format_real(col.values[i - 1]) +
                        "; input must be sorted ascending (or pass --allow-unsorted)");
      }
    }
  }
  if (col.values.front() < c) {
    throw DataError("smallest value " + format_real(col.values.front()) + " is below C = " +
                    format_real(c));
  }
  return HeavySample::from_sorted(std::move(col.values), c);
}

void require_positive_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("--c must be positive, got " + format_real(c));
}

std::size_t resolve_k(const CLI::Option* opt, std::size_t k, std::size_t n) {
  if (opt->count() == 0) return n;
  if (k < 1 || k > n) {
    throw DomainError("--k must lie in 1.." + std::to_string(n) + ", got " + std::to_string(k));
  }
  return k;
}

Cell finite_or_missing(double v, const char* tag) {
  if (std::isfinite(v)) return v;
  return Missing{tag};
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string spec;
  std::size_t n = 0;
  double c = 1.0;
  std::uint64_t stream = 0;
  Output output;
};

ReportTable do_simulate(const SimulateArgs& a, const CLI::Option* c_opt, std::uint64_t seed) {
  const DistributionSpec spec = DistributionSpec::parse(a.spec);
  if (a.n < 1) throw DomainError("--n must be at least 1");
  std::vector<double> draws(a.n);
  Sampler sampler(spec, {seed, a.stream});
  sampler.fill(draws);
  HeavySample h = [&] {
    if (spec.is_spacing_law()) {
      require_positive_c(a.c);
      return heavy_sample(generalized_renyi(std::move(draws)), a.c);
    }
    if (c_opt->count() > 0) {
      throw UsageError("--c applies to spacing laws only; " + spec.to_string() +
                       " is sampled iid with C at its lower endpoint");
    }
    std::sort(draws.begin(), draws.end());
    return HeavySample::from_sorted(std::move(draws), spec.lower_endpoint());
  }();

  const std::vector<double> spacings = scaled_log_spacings(h);
  ReportTable table({"index", "W", "scaled_log_spacing"});
  for (std::size_t k = 1; k <= h.size(); ++k) {
    table.add_row({static_cast<std::int64_t>(k), h.order_stat(k), spacings[k - 1]});
  }
  table.meta()["spec"] = spec.to_string();
  table.meta()["n"] = a.n;
  table.meta()["C"] = h.scale();
  table.meta()["stream"] = a.stream;
  return table;
}

struct EstimateArgs {
  std::string method = "hill";
  std::size_t k = 0;
  double s = 0.0;
  double eps = 0.1;
  double c = 0.0;
  std::string input;
  bool allow_unsorted = false;
  std::string interval;
  Output output;
};

ReportTable do_estimate(const EstimateArgs& a, const CLI::Option* k_opt, const CLI::Option* s_opt,
                        std::istream& in) {
  require_positive_c(a.c);
  if (!(a.eps > 0.0 && a.eps < 1.0)) throw DomainError("--eps must lie in (0, 1)");
  if (a.method == "quantile" && k_opt->count() > 0) {
    throw UsageError("--k does not apply to --method quantile; use --s to choose the quantile level");
  }
  if (a.method != "quantile" && s_opt->count() > 0) {
    throw UsageError("--s applies only to --method quantile; use --k for " + a.method);
  }
  std::string interval = a.interval;
  if (interval.empty()) {
    interval = a.method == "quantile" ? "quantile" : a.method == "hill" ? "spacing" : "none";
  }
  if (interval == "quantile" && a.method != "quantile") {
    throw UsageError("--interval quantile requires --method quantile");
  }
  if ((interval == "spacing" || interval == "hill-self") && a.method == "quantile") {
    throw UsageError("--interval " + interval + " requires --method hill or ml-uniform");
  }
  double s = a.s;
  if (a.method == "quantile") {
    if (s_opt->count() == 0) s = h_minimizer().s0;
    if (!(s > 0.0 && s < 1.0)) throw DomainError("--s must lie in (0, 1), got " + format_real(s));
  }

  const HeavySample h = load_sample(a.input, in, a.c, a.allow_unsorted);
  const std::size_t n = h.size();

  EstimateWithCI r;
  if (a.method == "quantile") {
    const std::size_t idx = upper_index(n, s);
    if (idx < 1) throw DomainError("ceil(n s) must be at least 1");
    const double gamma_tilde = log_ratio(h.order_stat(idx), h.scale()) / -std::log1p(-s);
    if (interval == "quantile") {
      if (n < 2) throw DomainError("the quantile interval needs at least 2 observations");
      r = ci_quantile(gamma_tilde, spacing_sigma(h, n), s, n, a.eps);
    } else {
      r.gamma_hat = gamma_tilde;
      r.k_used = idx;
    }
    r.method = EstimatorMethod::quantile;
  } else {
    const std::size_t k = resolve_k(k_opt, a.k, n);
    const double estimate = a.method == "hill" ? hill(h, k) : ml_uniform(h, k);
    if (interval == "spacing") {
      if (k < 2) throw DomainError("the spacing-variance interval needs k >= 2");
      r = ci_spacing(estimate, spacing_sigma(h, k), k, a.eps);
    } else if (interval == "hill-self") {
      r = ci_hill_self(estimate, k, a.eps);
    } else {
      r.gamma_hat = estimate;
      r.k_used = k;
    }
    r.method = a.method == "hill" ? EstimatorMethod::hill : EstimatorMethod::ml_uniform;
  }

  ReportTable table({"method", "interval", "n", "k_used", "gamma_hat", "lower", "upper", "level"});
  std::vector<Cell> row = {std::string(to_string(r.method)),
                           std::string(to_string(r.interval_method)),
                           static_cast<std::int64_t>(n), static_cast<std::int64_t>(r.k_used),
                           r.gamma_hat};
  if (r.interval_method == IntervalMethod::none) {
    row.emplace_back(Missing{"no_interval"});
    row.emplace_back(Missing{"no_interval"});
    row.emplace_back(Missing{"no_interval"});
  } else {
    row.emplace_back(r.lower);
    row.emplace_back(r.upper);
    row.emplace_back(r.level);
  }
  table.add_row(std::move(row));
  table.meta()["C"] = a.c;
  if (a.method == "quantile") table.meta()["s"] = s;
  return table;
}

struct FitArgs {
  std::string family;
  double r = 0.0;
  std::size_t k = 0;
  double c = 0.0;
  std::string input;
  bool allow_unsorted = false;
  Output output;
};

ReportTable do_fit(const FitArgs& a, const CLI::Option* r_opt, const CLI::Option* k_opt,
                   std::istream& in) {
  require_positive_c(a.c);
  const bool is_gamma = a.family == "gamma";
  if (is_gamma && r_opt->count() == 0) throw UsageError("--family gamma requires --r (the shape)");
  if (!is_gamma && r_opt->count() > 0) throw UsageError("--r applies only to --family gamma");
  if (is_gamma && (!(a.r > 0.0) || !std::isfinite(a.r))) {
    throw DomainError("--r must be positive, got " + format_real(a.r));
  }
  const FamilyTag family = FamilyTag::parse(a.family, is_gamma ? a.r : 1.0);
  const HeavySample h = load_sample(a.input, in, a.c, a.allow_unsorted);
  const std::size_t k = resolve_k(k_opt, a.k, h.size());
  const double gamma_hat = ml_fit(family, h, k);

  ReportTable table({"family", "r", "n", "k", "gamma_hat", "log_likelihood"});
  double loglik = -std::numeric_limits<double>::infinity();
  if (gamma_hat > 0.0) {
    loglik = conditional_log_likelihood(DensityModel(family.member(gamma_hat)), h, k);
  }
  table.add_row({a.family, is_gamma ? Cell{a.r} : Cell{Missing{"not_applicable"}},
                 static_cast<std::int64_t>(h.size()), static_cast<std::int64_t>(k), gamma_hat,
                 finite_or_missing(loglik, "degenerate")});
  table.meta()["C"] = a.c;
  return table;
}

struct RateArgs {
  std::string family;
  double r = 1.0;
  double c = 0.0;
  std::string spec;
  double z = 0.0;
  Output output;
};

ReportTable do_rate(const RateArgs& a, const CLI::Option* family_opt, const CLI::Option* r_opt,
                    const CLI::Option* c_opt, const CLI::Option* spec_opt,
                    const CLI::Option* z_opt) {
  if (spec_opt->count() > 0) {
    if (z_opt->count() == 0) throw UsageError("--spec requires --z (the point at which to evaluate I)");
    const DistributionSpec spec = DistributionSpec::parse(a.spec);
    const double value = rate_function(spec, a.z);
    ReportTable table({"spec", "z", "rate"});
    table.add_row({spec.to_string(), a.z, finite_or_missing(value, "infinite")});
    return table;
  }
  if (family_opt->count() == 0) {
    throw UsageError("choose either --family gamma|iid (with --c) or --spec with --z");
  }
  if (z_opt->count() > 0) throw UsageError("--z applies only together with --spec");
  if (c_opt->count() == 0) throw UsageError("--family requires --c");
  if (a.family == "iid" && r_opt->count() > 0) {
    throw UsageError("--r does not apply to --family iid (its rates are the r = 1 case)");
  }
  const RatePair rates = a.family == "iid" ? iid_comparison_rates(a.c) : gamma_family_rates(a.r, a.c);
  ReportTable table({"family", "r", "c", "upper", "lower"});
  table.add_row({a.family, a.family == "iid" ? 1.0 : a.r, a.c, rates.upper,
                 finite_or_missing(rates.lower, "infinite")});
  return table;
}

struct FigureArgs {
  std::string id;
  std::string mode = "model3";
  std::size_t n = 0;
  std::size_t reps = 0;
  std::size_t avg_seeds = 0;
  double eps = 0.1;
  unsigned workers = 0;
  std::uint64_t stream_offset = 0;
  std::vector<std::string> specs;
  std::vector<std::size_t> k_grid;
  Output output;
};

struct FigureOpts {
  CLI::Option* mode;
  CLI::Option* n;
  CLI::Option* reps;
  CLI::Option* avg_seeds;
  CLI::Option* eps;
  CLI::Option* k;
};

ExperimentKind figure_kind(const std::string& id) {
  if (id == "1") return ExperimentKind::variance_curve;
  if (id == "2") return ExperimentKind::hill_plot;
  if (id == "3") return ExperimentKind::coverage;
  if (id == "t1") return ExperimentKind::theorem1_ks;
  if (id == "t2") return ExperimentKind::theorem2_moments;
  return ExperimentKind::ld_check;
}

ExperimentConfig figure_config(const FigureArgs& a, const FigureOpts& o, std::uint64_t seed) {
  const ExperimentKind kind = figure_kind(a.id);
  const bool takes_mode = kind == ExperimentKind::hill_plot || kind == ExperimentKind::coverage;
  if (o.mode->count() > 0 && !takes_mode) {
    throw UsageError("--mode applies only to --id 2 and --id 3");
  }
  if (o.avg_seeds->count() > 0) {
    if (kind != ExperimentKind::hill_plot) throw UsageError("--avg-seeds applies only to --id 2");
    if (o.reps->count() > 0) {
      throw UsageError("--avg-seeds and --reps are the same setting for --id 2; pass only one");
    }
  }
  if (o.eps->count() > 0 && kind != ExperimentKind::coverage) {
    throw UsageError("--eps applies only to --id 3");
  }
  if (o.k->count() > 0 && kind != ExperimentKind::hill_plot && kind != ExperimentKind::coverage &&
      kind != ExperimentKind::ld_check) {
    throw UsageError("--k applies only to --id 2, 3 and ld");
  }
  if (o.n->count() > 0 && kind == ExperimentKind::ld_check) {
    throw UsageError("--id ld has n = k; use --k to choose the sample sizes");
  }

  ExperimentConfig cfg = ExperimentConfig::defaults(kind, parse_sample_mode(a.mode));
  cfg.master_seed = seed;
  cfg.workers = a.workers;
  cfg.stream_offset = a.stream_offset;
  if (!a.specs.empty()) {
    cfg.specs.clear();
    for (const auto& s : a.specs) cfg.specs.push_back(DistributionSpec::parse(s));
  }
  if (o.n->count() > 0) {
    if (a.n < 1) throw DomainError("--n must be at least 1");
    cfg.n = a.n;
    if (kind == ExperimentKind::theorem1_ks || kind == ExperimentKind::theorem2_moments) {
      cfg.n_grid = {a.n};
    }
    if (kind == ExperimentKind::coverage && o.k->count() == 0) {
      if (a.n < 2) throw DomainError("--id 3 needs n >= 2");
      cfg.k_grid = log_spaced_grid(std::min<std::size_t>(10, a.n), a.n);
      if (cfg.k_grid.front() < 2) cfg.k_grid.erase(cfg.k_grid.begin());
    }
  }
  if (o.reps->count() > 0) cfg.reps = a.reps;
  if (o.avg_seeds->count() > 0) cfg.reps = a.avg_seeds;
  if (o.eps->count() > 0) cfg.eps = a.eps;
  if (o.k->count() > 0) cfg.k_grid = a.k_grid;
  return cfg;
}

constexpr const char* kSimulateSchema =
    "Columns: index (k = 1..n), W (order statistic W_{k,n}), scaled_log_spacing\n"
    "((n-k+1) log(W_k / W_{k-1}), W_0 = C).";
constexpr const char* kEstimateSchema =
    "Input: one positive decimal per line, ascending. Blank lines and '#' lines are skipped.\n"
    "Columns: method, interval, n, k_used, gamma_hat, lower, upper, level.";
constexpr const char* kFitSchema = "Columns: family, r, n, k, gamma_hat, log_likelihood.";
constexpr const char* kRateSchema =
    "Columns with --family: family, r, c, upper, lower (limits of (1/k) log P).\n"
    "Columns with --spec: spec, z, rate (I(z)).";
constexpr const char* kFigureSchema =
    "Ids: 1 variance curve (s, h, var:<law>, ratio:<law>); 2 Hill plot (k, hill:<law>);\n"
    "3 coverage (k, cov_spacing:<law>, cov_hill:<law>, hits_spacing:<law>, hits_hill:<law>);\n"
    "t1 convergence in law; t2 moment convergence; ld large-deviation check.\n"
    "See docs/formats.md for every column.";

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, const std::optional<std::string>& env_seed) {
  CLI::App app{"Generalized Renyi heavy-tail model: simulation, estimation, rates, figures", "renyi"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::uint64_t seed = kDefaultSeed;

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Draw one model sample W_{1,n} <= ... <= W_{n,n}");
  simulate->add_option("--spec", sim.spec, "Distribution, e.g. exp:gamma=0.5 or pareto:gamma=0.5,c=1")
      ->required();
  simulate->add_option("--n", sim.n, "Sample size")->required();
  auto* sim_c = simulate->add_option("--c", sim.c, "Scale C (spacing laws)")->capture_default_str();
  simulate->add_option("--seed", seed, "Master seed (RENYI_SEED overrides)")->capture_default_str();
  simulate->add_option("--stream", sim.stream, "Stream index")->capture_default_str();
  add_output_flags(simulate, sim.output);
  simulate->footer(kSimulateSchema);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate gamma from a sorted data column");
  estimate->add_option("--method", est.method, "Estimator")
      ->check(CLI::IsMember({"hill", "quantile", "ml-uniform"}))
      ->capture_default_str();
  auto* est_k = estimate->add_option("--k", est.k, "Number of top order statistics (default n)");
  auto* est_s = estimate->add_option("--s", est.s, "Quantile level for --method quantile (default s0)");
  estimate->add_option("--eps", est.eps, "Interval level is 1 - eps")->capture_default_str();
  estimate->add_option("--c", est.c, "Scale C")->required();
  estimate->add_option("--input", est.input, "Data file ('-' or omitted: stdin)");
  estimate->add_flag("--allow-unsorted", est.allow_unsorted, "Sort the input instead of rejecting it");
  estimate->add_option("--interval", est.interval,
                       "spacing, hill-self, quantile or none (default follows the method)")
      ->check(CLI::IsMember({"spacing", "hill-self", "quantile", "none"}));
  add_output_flags(estimate, est.output);
  estimate->footer(kEstimateSchema);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Maximum likelihood fit of gamma for a spacing family");
  fit_cmd->add_option("--family", fit.family, "exponential, uniform or gamma")
      ->required()
      ->check(CLI::IsMember({"exponential", "uniform", "gamma"}));
  auto* fit_r = fit_cmd->add_option("--r", fit.r, "Gamma shape (--family gamma)");
  auto* fit_k = fit_cmd->add_option("--k", fit.k, "Number of top order statistics (default n)");
  fit_cmd->add_option("--c", fit.c, "Scale C")->required();
  fit_cmd->add_option("--input", fit.input, "Data file ('-' or omitted: stdin)");
  fit_cmd->add_flag("--allow-unsorted", fit.allow_unsorted, "Sort the input instead of rejecting it");
  add_output_flags(fit_cmd, fit.output);
  fit_cmd->footer(kFitSchema);

  RateArgs rate;
  auto* rate_cmd = app.add_subcommand("rate", "Large-deviation rates of the Hill estimator");
  auto* rate_family = rate_cmd->add_option("--family", rate.family, "gamma or iid")
                          ->check(CLI::IsMember({"gamma", "iid"}));
  auto* rate_r = rate_cmd->add_option("--r", rate.r, "Gamma shape")->capture_default_str();
  auto* rate_c = rate_cmd->add_option("--c", rate.c, "Relative deviation c in (0, 1)");
  auto* rate_spec = rate_cmd->add_option("--spec", rate.spec, "Spacing law for I(z)");
  auto* rate_z = rate_cmd->add_option("--z", rate.z, "Argument of I");
  rate_spec->excludes(rate_family);
  rate_family->excludes(rate_spec);
  add_output_flags(rate_cmd, rate.output);
  rate_cmd->footer(kRateSchema);

  FigureArgs fig;
  auto* figure = app.add_subcommand("figure", "Regenerate figure data or a verification table");
  figure->add_option("--id", fig.id, "1, 2, 3, t1, t2 or ld")
      ->required()
      ->check(CLI::IsMember({"1", "2", "3", "t1", "t2", "ld"}));
  FigureOpts fo{};
  fo.mode = figure->add_option("--mode", fig.mode, "model3 or iid (ids 2 and 3)")
                ->check(CLI::IsMember({"model3", "iid"}));
  fo.n = figure->add_option("--n", fig.n, "Sample size (ids t1, t2: a single n)");
  fo.reps = figure->add_option("--reps", fig.reps, "Monte Carlo replications");
  fo.avg_seeds = figure->add_option("--avg-seeds", fig.avg_seeds,
                                    "Id 2: average the Hill path over this many realizations");
  fo.eps = figure->add_option("--eps", fig.eps, "Id 3: interval level is 1 - eps");
  fo.k = figure->add_option("--k", fig.k_grid, "k grid (ids 2, 3, ld)");
  figure->add_option("--spec", fig.specs, "Override the laws (repeatable)");
  figure->add_option("--seed", seed, "Master seed (RENYI_SEED overrides)")->capture_default_str();
  figure->add_option("--workers", fig.workers, "Threads (0: all cores); never changes results")
      ->capture_default_str();
  figure->add_option("--stream-offset", fig.stream_offset, "First replication index")
      ->capture_default_str();
  add_output_flags(figure, fig.output);
  figure->footer(kFigureSchema);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (env_seed) seed = parse_seed(*env_seed);
    const std::string invocation = join_invocation(args);
    ReportTable table;
    const Output* output = nullptr;
    bool seeded = false;
    if (simulate->parsed()) {
      table = do_simulate(sim, sim_c, seed);
      output = &sim.output;
      seeded = true;
    } else if (estimate->parsed()) {
      table = do_estimate(est, est_k, est_s, in);
      output = &est.output;
    } else if (fit_cmd->parsed()) {
      table = do_fit(fit, fit_r, fit_k, in);
      output = &fit.output;
    } else if (rate_cmd->parsed()) {
      table = do_rate(rate, rate_family, rate_r, rate_c, rate_spec, rate_z);
      output = &rate.output;
    } else {
      table = run_experiment(figure_config(fig, fo, seed));
      output = &fig.output;
    }
    table.meta()["invocation"] = invocation;
    if (seeded) table.meta()["master_seed"] = seed;
    emit(table, *output, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotImplementedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace renyi::cli
