#include "oracle_lab/selftest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracle_lab/aggregation.hpp"
#include "oracle_lab/analytics.hpp"
#include "oracle_lab/consensus.hpp"
#include "oracle_lab/engine.hpp"
#include "oracle_lab/latency.hpp"
#include "oracle_lab/signal.hpp"

namespace oracle_lab {
namespace {

bool piecewise_constant_signal() {
  const SignalModel model(5.0, 5);
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double a = rng.uniform(0.0, 100.0);
    const double b = rng.uniform(0.0, 100.0);
    const bool same_epoch = std::floor(a * 5.0) == std::floor(b * 5.0);
    if ((model.sample(0, a) == model.sample(3, b)) != same_epoch) return false;
    if (a <= b && model.sample(1, a).epoch_index > model.sample(1, b).epoch_index) return false;
  }
  return true;
}

bool latency_nonnegative() {
  for (auto kind : {LatencyKind::kGaussian, LatencyKind::kUniform}) {
    LatencyModel model;
    model.kind = kind;
    Rng rng(7);
    for (int i = 0; i < 100000; ++i) {
      if (sample_latency(model, rng) < 0.0) return false;
    }
  }
  return true;
}

bool benefit_matches_definition() {
  Rng rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng.index(25);
    const std::size_t t = 1 + rng.index(n);
    const std::size_t alphabet = 1 + rng.index(4);
    std::vector<DataValue> reps(n);
    for (auto& r : reps) r.epoch_index = static_cast<std::int64_t>(rng.index(alphabet));
    std::size_t expected = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t others = 0;
      for (std::size_t k = 0; k < n; ++k) others += (k != i && reps[k] == reps[i]) ? 1 : 0;
      expected += others + 1 >= t ? 1 : 0;
    }
    const auto outcome = threshold_consensus(reps, t);
    if (outcome.benefit != expected) return false;
    if (outcome.success && outcome.benefit < t) return false;
  }
  return true;
}

bool binomial_tail_matches_enumeration() {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (double p : {0.1, 0.2, 0.5}) {
      std::vector<double> by_count(n + 1, 0.0);
      for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        const auto k = static_cast<std::size_t>(std::popcount(mask));
        by_count[k] += std::pow(p, static_cast<double>(k)) *
                       std::pow(1.0 - p, static_cast<double>(n - k));
      }
      for (std::size_t t = 0; t <= n; ++t) {
        double expected = 0.0;
        for (std::size_t k = t; k <= n; ++k) expected += by_count[k];
        if (std::abs(binomial_tail(n, t, p) - expected) > 1e-12) return false;
      }
    }
  }
  return true;
}

SimConfig small_config() {
  SimConfig c;
  c.n_tasks = 60;
  c.master_seed = 2024;
  return c;
}

bool campaign_deterministic() {
  const auto a = run_campaign(small_config());
  const auto b = run_campaign(small_config());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& ra = a.records[i];
    const auto& rb = b.records[i];
    if (ra.consensus.shared_results != rb.consensus.shared_results) return false;
    for (std::size_t c = 0; c < ra.cells.size(); ++c) {
      if (ra.cells[c].receive_time_s != rb.cells[c].receive_time_s) return false;
    }
  }
  return a.summary.success_rate == b.summary.success_rate;
}

bool homogeneous_network_always_agrees() {
  SimConfig c = small_config();
  c.latency.gaussian_std = 0.0;
  c.latency.perturbation_high = 0.0;
  c.timing_enabled = false;
  c.strategy = AggregationStrategy::kMedian;
  const auto result = run_campaign(c);
  return std::all_of(result.records.begin(), result.records.end(), [&](const TaskRecord& r) {
    return r.consensus.success && r.benefit() == c.n_nodes;
  });
}

bool beliefs_never_decrease() {
  SimConfig c = small_config();
  c.timing_enabled = false;
  Campaign campaign(c);
  std::vector<BeliefMatrix> previous;
  for (const auto& node : campaign.nodes()) previous.push_back(*node.rep_beliefs);
  for (std::size_t task = 0; task < c.n_tasks; ++task) {
    (void)campaign.run_task(task);
    for (std::size_t i = 0; i < c.n_nodes; ++i) {
      const auto now = campaign.nodes()[i].rep_beliefs->scores();
      const auto before = previous[i].scores();
      for (std::size_t e = 0; e < now.size(); ++e) {
        if (now[e] < before[e]) return false;
      }
      previous[i] = *campaign.nodes()[i].rep_beliefs;
    }
  }
  return true;
}

}  // namespace

bool run_selftest(std::ostream& out) {
  const std::vector<std::pair<std::string, std::function<bool()>>> checks = {
      {"signal is piecewise constant and monotone", piecewise_constant_signal},
      {"latency samples are nonnegative", latency_nonnegative},
      {"benefit and consensus match the per-node definition", benefit_matches_definition},
      {"binomial tail matches enumeration", binomial_tail_matches_enumeration},
      {"campaigns are deterministic", campaign_deterministic},
      {"homogeneous network always reaches consensus", homogeneous_network_always_agrees},
      {"REP-AG beliefs never decrease", beliefs_never_decrease},
  };
  bool all = true;
  for (const auto& [name, check] : checks) {
    const bool ok = check();
    all = all && ok;
    out << fmt::format("[{}] {}\n", ok ? "PASS" : "FAIL", name);
  }
  return all;
}

}  // namespace oracle_lab
