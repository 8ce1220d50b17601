#include "oracle_lab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "oracle_lab/analytics.hpp"
#include "oracle_lab/config.hpp"
#include "oracle_lab/errors.hpp"
#include "oracle_lab/export.hpp"
#include "oracle_lab/selftest.hpp"
#include "oracle_lab/sweep.hpp"

namespace oracle_lab {
namespace {

constexpr const char* kSeedEnv = "ORACLE_LAB_SEED";

struct CampaignFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> tasks;
  std::vector<std::string> overrides;
  std::string out_dir;
};

void add_campaign_flags(CLI::App& cmd, CampaignFlags& flags) {
  cmd.add_option("--config", flags.config_path, "Config file (key = value lines)")
      ->check(CLI::ExistingFile);
  cmd.add_option("--seed", flags.seed, "Master seed (falls back to $ORACLE_LAB_SEED)");
  cmd.add_option("--tasks", flags.tasks, "Number of tasks per campaign");
  cmd.add_option("--set", flags.overrides, "Override one config key, KEY=VALUE (repeatable)");
  cmd.add_option("--out", flags.out_dir, "Output directory")->required();
}

RunConfig resolve_config(const CampaignFlags& flags) {
  RunConfig config = flags.config_path.empty() ? RunConfig{} : load_config(flags.config_path);
  for (const auto& entry : flags.overrides) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects KEY=VALUE, got '" + entry + "'");
    apply_setting(config, entry.substr(0, eq), entry.substr(eq + 1));
  }
  if (flags.tasks) config.sim.n_tasks = *flags.tasks;
  if (flags.seed) {
    config.sim.master_seed = *flags.seed;
  } else if (!config.seed_explicit) {
    if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
      apply_setting(config, "engine.seed", env);
    }
  }
  config.sim.validate();
  return config;
}

int run_simulate(const CampaignFlags& flags, bool dump_beliefs, bool dump_waits, bool no_timing) {
  RunConfig config = resolve_config(flags);
  if (dump_beliefs) config.output.dump_beliefs = true;
  if (dump_waits) config.output.dump_waits = true;
  if (no_timing) config.output.write_timing = false;

  ensure_directory(flags.out_dir);
  TaskDumper dumper(config.sim, flags.out_dir, config.output);
  const auto result = run_campaign(config.sim, dumper.observer());
  export_metrics(result, flags.out_dir, config.output);

  std::size_t converged = 0;
  for (const auto& c : result.summary.convergence) converged += c ? 1 : 0;
  std::cout << fmt::format(
      "{} tasks  success_rate={:.4f}  mean_benefit={:.3f}  converged_nodes={}/{}  -> {}\n",
      result.records.size(), result.summary.success_rate, result.summary.mean_benefit, converged,
      result.config.n_nodes, flags.out_dir);
  return 0;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::vector<std::string>& items, Parse parse) {
  std::vector<T> out;
  for (const auto& item : items) out.push_back(parse(item));
  return out;
}

struct SweepFlags {
  std::vector<double> frequencies;
  std::vector<std::string> strategies;
  std::vector<std::string> timing;
  std::vector<std::string> latency;
  std::vector<std::size_t> nodes;
  std::vector<std::string> thresholds;
  std::size_t jobs = 0;
  bool full = false;
};

int run_sweep_command(const CampaignFlags& flags, const SweepFlags& sweep_flags) {
  RunConfig config = resolve_config(flags);
  SweepSpec spec;
  if (!sweep_flags.frequencies.empty()) spec.frequencies = sweep_flags.frequencies;
  if (!sweep_flags.strategies.empty()) {
    spec.strategies = parse_list<AggregationStrategy>(
        sweep_flags.strategies, [](const std::string& s) { return parse_aggregation_strategy(s); });
  }
  if (!sweep_flags.timing.empty()) {
    spec.timing = parse_list<bool>(sweep_flags.timing, [](const std::string& s) {
      if (s == "on") return true;
      if (s == "off") return false;
      throw ConfigError("--timing takes on/off, got '" + s + "'");
    });
  }
  if (!sweep_flags.latency.empty()) {
    spec.latency_kinds = parse_list<LatencyKind>(
        sweep_flags.latency, [](const std::string& s) { return parse_latency_kind(s); });
  }
  if (!sweep_flags.nodes.empty()) spec.node_counts = sweep_flags.nodes;
  if (!sweep_flags.thresholds.empty()) {
    spec.thresholds = parse_list<std::optional<std::size_t>>(
        sweep_flags.thresholds, [](const std::string& s) -> std::optional<std::size_t> {
          if (s == "majority") return std::nullopt;
          RunConfig scratch;
          apply_setting(scratch, "consensus.threshold", s);
          return scratch.sim.threshold;
        });
  }
  if (!sweep_flags.full) config.output.write_timing = false;

  const auto points = expand_sweep(spec, config.sim);
  std::cout << fmt::format("running {} campaigns\n", points.size());
  const auto rows = run_sweep(points, sweep_flags.jobs, flags.out_dir, config.output);
  for (const auto& row : rows) {
    std::cout << fmt::format("{:<44} success_rate={:.4f} mean_benefit={:.3f}\n", row.point.name,
                             row.summary.success_rate, row.summary.mean_benefit);
  }
  return 0;
}

struct AnalyticFlags {
  std::optional<std::size_t> n;
  std::optional<std::size_t> t;
  double a = 0.02;
  double b = 1.02;
  double f = 5.0;
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
};

void print_row(std::size_t n, std::size_t t, const AnalyticFlags& flags, Rng& rng,
               std::optional<double> published) {
  AnalyticParams params{n, t, flags.a, flags.b, flags.f};
  const double analytic = consensus_success_rate(params);
  std::string line = fmt::format("{:>5} {:>5} {:>14.6e}", n, t, analytic);
  if (flags.trials > 0) {
    const auto mc = monte_carlo_rate(params, flags.trials, rng);
    line += fmt::format(" {:>14.6e} {:>12.3e}", mc.rate, mc.standard_error);
  } else {
    line += fmt::format(" {:>14} {:>12}", "-", "-");
  }
  if (published) line += fmt::format(" {:>14.6e}", *published);
  std::cout << line << '\n';
}

int run_analytic(const AnalyticFlags& flags) {
  AnalyticParams probe{flags.n.value_or(1), 1, flags.a, flags.b, flags.f};
  probe.validate();
  Rng rng(flags.seed);
  std::cout << fmt::format("a={} b={} f={} p={} intervals={}\n", format_double(flags.a),
                           format_double(flags.b), format_double(flags.f),
                           format_double(interval_hit_prob(probe)), probe.interval_count());
  std::cout << fmt::format("{:>5} {:>5} {:>14} {:>14} {:>12}", "N", "t", "analytic",
                           "monte_carlo", "std_error");
  if (flags.n || flags.t) {
    if (!flags.n || !flags.t) throw ConfigError("--n and --t must be given together");
    std::cout << '\n';
    print_row(*flags.n, *flags.t, flags, rng, std::nullopt);
    return 0;
  }
  std::cout << fmt::format(" {:>14}\n", "published");
  for (const auto& row : reference_table()) {
    print_row(row.n_nodes, row.threshold, flags, rng, row.published_rate);
  }
  const auto fit = fit_interval_count(100);
  std::cout << fmt::format(
      "best integer interval count against the published rates: {} (p={}), squared log error "
      "{:.4g}\n",
      fit.intervals, format_double(1.0 / static_cast<double>(fit.intervals)), fit.log_error);
  return 0;
}

// Agreement is only expected where the per-interval events are rare enough
// that treating them as independent is accurate.
constexpr double kTightRegionRate = 0.01;

int run_validate(std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  bool all_ok = true;
  std::cout << fmt::format("{:>6} {:>4} {:>4} {:>12} {:>12} {:>10} {:>8} {}\n", "p", "N", "t",
                           "analytic", "monte_carlo", "std_error", "z", "verdict");
  for (double intervals : {10.0, 20.0}) {
    for (std::size_t n : {5, 11, 21}) {
      for (std::size_t t = 2; t <= n; ++t) {
        AnalyticParams params{n, t, 0.0, 1.0, intervals};
        const double analytic = consensus_success_rate(params);
        if (analytic < 1e-7) break;
        const auto mc = monte_carlo_rate(params, trials, rng);
        const double sigma =
            std::max(mc.standard_error,
                     std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(trials)));
        const double z = sigma > 0.0 ? (mc.rate - analytic) / sigma : 0.0;
        const bool tight = analytic <= kTightRegionRate;
        const bool agree = std::abs(z) <= 3.0;
        std::string verdict = agree ? "agree" : (tight ? "DISAGREE" : "approximation gap");
        if (tight && !agree) all_ok = false;
        std::cout << fmt::format("{:>6} {:>4} {:>4} {:>12.6e} {:>12.6e} {:>10.3e} {:>8.2f} {}\n",
                                 format_double(1.0 / intervals), n, t, analytic, mc.rate,
                                 mc.standard_error, z, verdict);
      }
    }
  }
  std::cout << (all_ok ? "all rare-event rows agree within 3 sigma\n"
                       : "rare-event disagreement found\n");
  return all_ok ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"oracle-lab: threshold-signature oracle consensus simulator"};
  app.require_subcommand(1);

  CampaignFlags sim_flags;
  bool dump_beliefs = false;
  bool dump_waits = false;
  bool no_timing = false;
  auto* simulate = app.add_subcommand("simulate", "Run one campaign and export its metrics");
  add_campaign_flags(*simulate, sim_flags);
  simulate->add_flag("--dump-beliefs", dump_beliefs, "Write per-task belief snapshots");
  simulate->add_flag("--dump-waits", dump_waits, "Write per-task TIM-OPT waits");
  simulate->add_flag("--no-timing-csv", no_timing, "Skip timing.csv");

  CampaignFlags sweep_campaign;
  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "Run a grid of campaigns");
  add_campaign_flags(*sweep, sweep_campaign);
  sweep->add_option("--frequencies", sweep_flags.frequencies, "Source change frequencies (Hz)")
      ->delimiter(',');
  sweep->add_option("--strategies", sweep_flags.strategies, "median,mode,vote,repag")
      ->delimiter(',');
  sweep->add_option("--timing", sweep_flags.timing, "TIM-OPT axis: off,on")->delimiter(',');
  sweep->add_option("--latency", sweep_flags.latency, "gaussian,uniform")->delimiter(',');
  sweep->add_option("--nodes", sweep_flags.nodes, "Node counts")->delimiter(',');
  sweep->add_option("--thresholds", sweep_flags.thresholds, "Thresholds or 'majority'")
      ->delimiter(',');
  sweep->add_option("--jobs", sweep_flags.jobs, "Worker threads (0 = all cores)");
  sweep->add_flag("--full", sweep_flags.full, "Also write timing.csv per campaign");

  AnalyticFlags analytic_flags;
  auto* analytic = app.add_subcommand("analytic", "Closed-form consensus success rates");
  analytic->add_option("--n", analytic_flags.n, "Number of nodes");
  analytic->add_option("--t", analytic_flags.t, "Threshold");
  analytic->add_option("--a", analytic_flags.a, "Lower response time bound (s)");
  analytic->add_option("--b", analytic_flags.b, "Upper response time bound (s)");
  analytic->add_option("--f", analytic_flags.f, "Source change frequency (Hz)");
  analytic->add_option("--trials", analytic_flags.trials, "Monte Carlo trials per row (0 = off)");
  analytic->add_option("--seed", analytic_flags.seed, "Monte Carlo seed");

  std::size_t validate_trials = 1000000;
  std::uint64_t validate_seed = 1;
  auto* validate = app.add_subcommand("validate", "Compare the closed form with Monte Carlo");
  validate->add_option("--trials", validate_trials, "Trials per grid point");
  validate->add_option("--seed", validate_seed, "Monte Carlo seed");

  auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit cleanly; every other parse failure is a
    // usage error and shares the configuration error code.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return run_simulate(sim_flags, dump_beliefs, dump_waits, no_timing);
    if (*sweep) return run_sweep_command(sweep_campaign, sweep_flags);
    if (*analytic) return run_analytic(analytic_flags);
    if (*validate) return run_validate(validate_trials, validate_seed);
    if (*selftest) return run_selftest(std::cout) ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace oracle_lab
