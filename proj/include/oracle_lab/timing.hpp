#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "oracle_lab/signal.hpp"

namespace oracle_lab {

/// TIM-OPT beliefs held by one node: entry (k, j, l) scores how well wait
/// slot l on source j has lined this node up with node k's representative.
/// Scores may go negative.
class TimingBeliefTensor {
 public:
  TimingBeliefTensor(std::size_t num_nodes, std::size_t num_sources, std::size_t num_slots);

  [[nodiscard]] std::size_t num_nodes() const { return nodes_; }
  [[nodiscard]] std::size_t num_sources() const { return sources_; }
  [[nodiscard]] std::size_t num_slots() const { return slots_; }

  [[nodiscard]] double at(std::size_t node, std::size_t source, std::size_t slot) const {
    return scores_[offset(node, source, slot)];
  }
  double& at(std::size_t node, std::size_t source, std::size_t slot) {
    return scores_[offset(node, source, slot)];
  }

  [[nodiscard]] std::span<const double> scores() const { return scores_; }

  friend bool operator==(const TimingBeliefTensor&, const TimingBeliefTensor&) = default;

 private:
  [[nodiscard]] std::size_t offset(std::size_t node, std::size_t source, std::size_t slot) const {
    return (node * sources_ + source) * slots_ + slot;
  }

  std::size_t nodes_;
  std::size_t sources_;
  std::size_t slots_;
  std::vector<double> scores_;
};

/// The k candidate waits {omega/k, 2*omega/k, ..., omega}.
struct WaitStrategySpace {
  double omega;
  std::size_t k;

  [[nodiscard]] double slot(std::size_t l) const {
    return static_cast<double>(l + 1) * omega / static_cast<double>(k);
  }
};

struct WaitChoice {
  std::size_t slot;
  double wait_s;
};

/// Historical mean request latency of one node.
struct RunningLatencyStats {
  std::size_t count = 0;
  double mean = 0.0;
};

/// Tensor with every entry 1/k.
[[nodiscard]] TimingBeliefTensor init_timing_beliefs(std::size_t n, std::size_t m, std::size_t k);

/// Slot maximizing the summed belief of the other nodes for `source`, lowest
/// slot on ties.
[[nodiscard]] WaitChoice choose_wait(const TimingBeliefTensor& tensor, std::size_t source,
                                     std::size_t own_index, const WaitStrategySpace& space);

/// Adjustment for one shared result: 1 for the consensus value, otherwise
/// (count - t) / t, which is negative whenever the value fell short of t.
[[nodiscard]] double timopt_delta(const DataValue& result,
                                  std::span<const DataValue> shared_results,
                                  const std::optional<DataValue>& consensus_value,
                                  std::size_t threshold);

/// For every other node k and source j with R_k == X_j, adds delta(R_k) to the
/// slot this node actually used on source j.
void timopt_update(TimingBeliefTensor& tensor, std::span<const std::size_t> own_slots,
                   std::span<const DataValue> data, std::span<const DataValue> shared_results,
                   const std::optional<DataValue>& consensus_value, std::size_t threshold,
                   std::size_t own_index);

/// Folds one observed latency into the running mean.
[[nodiscard]] RunningLatencyStats update_omega(RunningLatencyStats stats, double observed_latency);

}  // namespace oracle_lab
