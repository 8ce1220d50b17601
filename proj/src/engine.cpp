#include "oracle_lab/engine.hpp"

#include <cmath>
#include <string>

#include "oracle_lab/errors.hpp"

namespace oracle_lab {
namespace {

// Substream purposes. Each (purpose, node, task) path gets its own seed so a
// node's draws never depend on how many draws another node or task consumed.
enum StreamPurpose : std::uint64_t {
  kLinkStream = 1,
  kLatencyStream = 2,
  kChoiceStream = 3,
  kJitterStream = 4,
  kPhaseStream = 5,
};

Rng stream(std::uint64_t master, StreamPurpose purpose, std::uint64_t node, std::uint64_t task) {
  return Rng(derive_seed(master, {purpose, node, task}));
}

}  // namespace

std::string_view to_string(TaskPhase phase) {
  return phase == TaskPhase::kAligned ? "aligned" : "random";
}

TaskPhase parse_task_phase(std::string_view text) {
  if (text == "aligned") return TaskPhase::kAligned;
  if (text == "random") return TaskPhase::kRandom;
  throw ConfigError("engine.task_phase must be 'aligned' or 'random', got '" + std::string(text) +
                    "'");
}

void SimConfig::validate() const {
  if (n_nodes < 2) throw ConfigError("nodes.n must be at least 2");
  if (m_sources < 1) throw ConfigError("sources.m must be at least 1");
  if (threshold < 1 || threshold > n_nodes) {
    throw ConfigError("consensus.threshold must satisfy 1 <= t <= N");
  }
  if (n_tasks < 1) throw ConfigError("tasks.count must be at least 1");
  if (timing_k < 1) throw ConfigError("timing.k must be at least 1");
  if (convergence_window < 1) throw ConfigError("engine.convergence_window must be at least 1");
  if (!(task_spacing_epochs >= 1.0)) {
    throw ConfigError("engine.task_spacing_epochs must be at least 1");
  }
  if (!(detection_jitter_s >= 0.0)) throw ConfigError("engine.detection_jitter_s must be >= 0");
  if (!signal.phase_offsets.empty() && signal.phase_offsets.size() != m_sources) {
    throw ConfigError("signal.phase_offsets must have exactly M entries");
  }
  latency.validate();
  (void)signal_model();
}

SignalModel SimConfig::signal_model() const {
  auto phases = signal.phase_offsets;
  if (phases.empty()) phases.assign(m_sources, 0.0);
  return SignalModel(signal.frequency_hz, signal.origin_time, std::move(phases), signal.mode);
}

StrategyKey strategy_key(const TaskRecord& record, std::size_t node) {
  StrategyKey key;
  key.reserve(record.m_sources + 1);
  const auto& chosen = record.nodes[node].chosen_source;
  key.push_back(chosen ? static_cast<std::int64_t>(*chosen) : -1);
  for (std::size_t j = 0; j < record.m_sources; ++j) {
    const auto& slot = record.cell(node, j).slot;
    key.push_back(slot ? static_cast<std::int64_t>(*slot) : -1);
  }
  return key;
}

std::optional<std::size_t> detect_convergence(std::span<const StrategyKey> history,
                                              std::size_t window) {
  if (window < 1) throw ContractViolation("detect_convergence: window must be positive");
  std::size_t run_start = 0;
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (i > 0 && history[i] != history[i - 1]) run_start = i;
    if (i + 1 - run_start >= window) return run_start;
  }
  return std::nullopt;
}

Campaign::Campaign(SimConfig config) : config_(std::move(config)), signal_(config_.signal_model()) {
  config_.validate();
  const std::size_t n = config_.n_nodes;
  const std::size_t m = config_.m_sources;
  nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    NodeState& node = nodes_[i];
    if (config_.strategy == AggregationStrategy::kRepAg) node.rep_beliefs = init_beliefs(n, m);
    if (config_.timing_enabled) node.timing_beliefs = init_timing_beliefs(n, m, config_.timing_k);
    node.initial_omega = config_.latency.expected_latency();
    if (config_.latency.persistence == LatencyPersistence::kPerLink) {
      Rng rng = stream(config_.master_seed, kLinkStream, i, 0);
      node.link_base.resize(m);
      for (auto& base : node.link_base) base = sample_raw_base(config_.latency, rng);
    }
  }
}

double Campaign::task_start(std::size_t task_index) const {
  const double epoch = signal_.epoch_length();
  double start = config_.signal.origin_time +
                 static_cast<double>(task_index) * config_.task_spacing_epochs * epoch;
  if (config_.task_phase == TaskPhase::kRandom) {
    Rng rng = stream(config_.master_seed, kPhaseStream, 0, task_index);
    start += rng.uniform(0.0, epoch);
  }
  return start;
}

TaskRecord Campaign::run_task(std::size_t task_index) {
  const std::size_t n = config_.n_nodes;
  const std::size_t m = config_.m_sources;
  const std::uint64_t seed = config_.master_seed;

  TaskRecord record;
  record.task_id = task_index;
  record.start_time_s = task_start(task_index);
  record.m_sources = m;
  record.cells.resize(n * m);
  record.nodes.resize(n);

  std::vector<DataValue> representatives(n);
  for (std::size_t i = 0; i < n; ++i) {
    NodeState& node = nodes_[i];
    NodeRecord& node_record = record.nodes[i];

    Rng jitter_rng = stream(seed, kJitterStream, i, task_index);
    node_record.detect_time_s =
        record.start_time_s + jitter_rng.uniform(0.0, config_.detection_jitter_s);

    Rng latency_rng = stream(seed, kLatencyStream, i, task_index);
    const WaitStrategySpace space{node.omega(), config_.timing_k};
    for (std::size_t j = 0; j < m; ++j) {
      CellRecord& cell = record.cells[i * m + j];
      if (node.timing_beliefs) {
        const WaitChoice choice = choose_wait(*node.timing_beliefs, j, i, space);
        cell.slot = choice.slot;
        cell.wait_s = choice.wait_s;
      }
      if (config_.latency.persistence == LatencyPersistence::kPerLink) {
        (void)latency_rng();
        (void)latency_rng();
        cell.latency_s =
            compose_latency(node.link_base[j], sample_perturbation(config_.latency, latency_rng));
      } else {
        cell.latency_s = sample_latency(config_.latency, latency_rng);
      }
      cell.receive_time_s = node_record.detect_time_s + cell.wait_s + cell.latency_s;
      cell.value = signal_.sample(j, cell.receive_time_s);
    }

    std::vector<DataValue> data(m);
    for (std::size_t j = 0; j < m; ++j) data[j] = record.cells[i * m + j].value;
    Rng choice_rng = stream(seed, kChoiceStream, i, task_index);
    AggregationOutcome outcome;
    switch (config_.strategy) {
      case AggregationStrategy::kMedian: outcome = median_agg(data); break;
      case AggregationStrategy::kMode: outcome = mode_agg(data, choice_rng); break;
      case AggregationStrategy::kVote: outcome = majority_vote_agg(data, choice_rng); break;
      case AggregationStrategy::kRepAg: outcome = repag_select(data, *node.rep_beliefs, i); break;
    }
    node_record.representative = outcome.representative;
    node_record.chosen_source = outcome.chosen_source;
    representatives[i] = outcome.representative;
  }

  record.consensus = threshold_consensus(representatives, config_.threshold);
  const auto& shared = record.consensus.shared_results;
  const auto& consensus_value = record.consensus.value;

  std::vector<DataValue> data(m);
  std::vector<std::size_t> slots(m);
  for (std::size_t i = 0; i < n; ++i) {
    NodeState& node = nodes_[i];
    for (std::size_t j = 0; j < m; ++j) {
      const CellRecord& cell = record.cells[i * m + j];
      data[j] = cell.value;
      slots[j] = cell.slot.value_or(0);
    }
    if (node.rep_beliefs) repag_update(*node.rep_beliefs, data, shared, consensus_value, i);
    if (node.timing_beliefs) {
      timopt_update(*node.timing_beliefs, slots, data, shared, consensus_value, config_.threshold,
                    i);
    }
    for (std::size_t j = 0; j < m; ++j) {
      node.latency_stats = update_omega(node.latency_stats, record.cells[i * m + j].latency_s);
    }
  }
  return record;
}

CampaignSummary summarize(const SimConfig& config, std::span<const TaskRecord> records) {
  CampaignSummary summary;
  if (records.empty()) return summary;

  std::size_t successes = 0;
  double benefit_total = 0.0;
  double benefit_successful = 0.0;
  std::size_t in_window = 0;
  summary.rolling_success.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& consensus = records[i].consensus;
    successes += consensus.success ? 1 : 0;
    in_window += consensus.success ? 1 : 0;
    if (i >= kRollingWindow && records[i - kRollingWindow].consensus.success) --in_window;
    const std::size_t width = std::min(i + 1, kRollingWindow);
    summary.rolling_success.push_back(static_cast<double>(in_window) / static_cast<double>(width));
    benefit_total += static_cast<double>(consensus.benefit);
    if (consensus.success) benefit_successful += static_cast<double>(consensus.benefit);
  }
  const auto count = static_cast<double>(records.size());
  summary.success_rate = static_cast<double>(successes) / count;
  summary.mean_benefit = benefit_total / count;
  summary.mean_benefit_successful =
      successes == 0 ? 0.0 : benefit_successful / static_cast<double>(successes);

  const std::size_t n = config.n_nodes;
  summary.convergence.resize(n);
  std::vector<StrategyKey> history(records.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t task = 0; task < records.size(); ++task) {
      history[task] = strategy_key(records[task], i);
    }
    summary.convergence[i] = detect_convergence(history, config.convergence_window);
  }
  return summary;
}

CampaignResult run_campaign(const SimConfig& config, const TaskObserver& observer) {
  CampaignResult result;
  result.config = config;
  Campaign campaign(config);
  result.records.reserve(config.n_tasks);
  for (std::size_t task = 0; task < config.n_tasks; ++task) {
    result.records.push_back(campaign.run_task(task));
    if (observer) observer(result.records.back(), campaign.nodes());
  }
  result.summary = summarize(config, result.records);
  return result;
}

}  // namespace oracle_lab
