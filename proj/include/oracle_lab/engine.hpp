#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "oracle_lab/aggregation.hpp"
#include "oracle_lab/consensus.hpp"
#include "oracle_lab/latency.hpp"
#include "oracle_lab/rng.hpp"
#include "oracle_lab/signal.hpp"
#include "oracle_lab/timing.hpp"

namespace oracle_lab {

// Offset of each task's start within its data-source epoch.
enum class TaskPhase { kAligned, kRandom };

[[nodiscard]] std::string_view to_string(TaskPhase phase);
[[nodiscard]] TaskPhase parse_task_phase(std::string_view text);

struct SignalSettings {
  double frequency_hz = 5.0;
  double origin_time = 0.0;
  /// Empty means all zeros.
  std::vector<double> phase_offsets;
  SignalMode mode = SignalMode::kShared;
};

struct SimConfig {
  std::size_t n_nodes = 21;
  std::size_t m_sources = 5;
  std::size_t threshold = 11;
  std::size_t n_tasks = 1000;
  SignalSettings signal;
  LatencyModel latency;
  AggregationStrategy strategy = AggregationStrategy::kRepAg;
  bool timing_enabled = true;
  std::size_t timing_k = 10;
  std::uint64_t master_seed = 0;
  std::size_t convergence_window = 20;
  /// Task start spacing measured in source epochs (1/f).
  double task_spacing_epochs = 100.0;
  TaskPhase task_phase = TaskPhase::kAligned;
  /// Per-node event detection delay ~ U(0, detection_jitter_s).
  double detection_jitter_s = 0.0;

  /// Throws ConfigError describing the first invalid field.
  void validate() const;
  [[nodiscard]] SignalModel signal_model() const;
};

/// One (node, source) request within a task.
struct CellRecord {
  double wait_s = 0.0;
  double latency_s = 0.0;
  double receive_time_s = 0.0;
  /// Wait slot used; empty when TIM-OPT is off.
  std::optional<std::size_t> slot;
  DataValue value;
};

struct NodeRecord {
  double detect_time_s = 0.0;
  DataValue representative;
  std::optional<std::size_t> chosen_source;
};

struct TaskRecord {
  std::size_t task_id = 0;
  double start_time_s = 0.0;
  std::size_t m_sources = 0;
  /// Row-major N x M.
  std::vector<CellRecord> cells;
  std::vector<NodeRecord> nodes;
  ConsensusOutcome consensus;

  [[nodiscard]] const CellRecord& cell(std::size_t node, std::size_t source) const {
    return cells[node * m_sources + source];
  }
  [[nodiscard]] std::size_t benefit() const { return consensus.benefit; }
};

/// Learning state private to one node.
struct NodeState {
  std::optional<BeliefMatrix> rep_beliefs;
  std::optional<TimingBeliefTensor> timing_beliefs;
  RunningLatencyStats latency_stats;
  double initial_omega = 0.0;
  /// Unclamped base draw per source; used only with per-link persistence.
  std::vector<double> link_base;

  [[nodiscard]] double omega() const {
    return latency_stats.count == 0 ? initial_omega : latency_stats.mean;
  }
};

/// A node's strategy in one task: chosen source (-1 if none) followed by the
/// wait slot per source (-1 when TIM-OPT is off).
using StrategyKey = std::vector<std::int64_t>;

[[nodiscard]] StrategyKey strategy_key(const TaskRecord& record, std::size_t node);

/// First task index from which the strategy stays unchanged for `window`
/// consecutive tasks, or empty if that never happens.
[[nodiscard]] std::optional<std::size_t> detect_convergence(std::span<const StrategyKey> history,
                                                            std::size_t window);

inline constexpr std::size_t kRollingWindow = 50;

struct CampaignSummary {
  double success_rate = 0.0;
  double mean_benefit = 0.0;
  /// Mean benefit over successful tasks only; 0 when none succeeded.
  double mean_benefit_successful = 0.0;
  /// Mean success over the trailing kRollingWindow tasks, one per task.
  std::vector<double> rolling_success;
  std::vector<std::optional<std::size_t>> convergence;
};

struct CampaignResult {
  SimConfig config;
  std::vector<TaskRecord> records;
  CampaignSummary summary;
};

/// Owns all per-node state of one campaign and advances it task by task.
class Campaign {
 public:
  explicit Campaign(SimConfig config);

  /// Runs one task and applies its belief and latency updates.
  TaskRecord run_task(std::size_t task_index);

  [[nodiscard]] const SimConfig& config() const { return config_; }
  [[nodiscard]] const std::vector<NodeState>& nodes() const { return nodes_; }
  [[nodiscard]] double task_start(std::size_t task_index) const;

 private:
  SimConfig config_;
  SignalModel signal_;
  std::vector<NodeState> nodes_;
};

/// Called after every task with the record and the post-update node states.
using TaskObserver = std::function<void(const TaskRecord&, std::span<const NodeState>)>;

[[nodiscard]] CampaignResult run_campaign(const SimConfig& config,
                                          const TaskObserver& observer = {});

[[nodiscard]] CampaignSummary summarize(const SimConfig& config,
                                        std::span<const TaskRecord> records);

}  // namespace oracle_lab
