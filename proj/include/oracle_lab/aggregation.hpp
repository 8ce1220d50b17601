#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "oracle_lab/rng.hpp"
#include "oracle_lab/signal.hpp"

namespace oracle_lab {

enum class AggregationStrategy { kMedian, kMode, kVote, kRepAg };

[[nodiscard]] std::string_view to_string(AggregationStrategy strategy);
[[nodiscard]] AggregationStrategy parse_aggregation_strategy(std::string_view text);

/// A node's M samples; index j holds the value fetched from source j.
using NodeDataSet = std::span<const DataValue>;

struct AggregationOutcome {
  DataValue representative;
  /// Source whose sample was submitted; empty for value-computed baselines.
  std::optional<std::size_t> chosen_source;
};

/// Upper median under (stream_id, epoch_index) order: element floor(M/2) of
/// the sorted samples.
[[nodiscard]] AggregationOutcome median_agg(NodeDataSet data);

/// Most frequent sample. Without a unique mode (all distinct, or a tie for the
/// top frequency) picks uniformly among the tied values. Consumes one draw.
[[nodiscard]] AggregationOutcome mode_agg(NodeDataSet data, Rng& rng);

/// Value held by at least floor(M/2)+1 samples. Otherwise falls back to a
/// uniformly random sample. Consumes one draw.
[[nodiscard]] AggregationOutcome majority_vote_agg(NodeDataSet data, Rng& rng);

/// REP-AG beliefs held by one node: row k scores how strongly node k's
/// representative has matched each of this node's sources. The owner's own
/// row is kept but never read or written.
class BeliefMatrix {
 public:
  BeliefMatrix(std::size_t num_nodes, std::size_t num_sources, double fill);

  [[nodiscard]] std::size_t num_nodes() const { return nodes_; }
  [[nodiscard]] std::size_t num_sources() const { return sources_; }

  [[nodiscard]] double at(std::size_t node, std::size_t source) const {
    return scores_[node * sources_ + source];
  }
  double& at(std::size_t node, std::size_t source) { return scores_[node * sources_ + source]; }

  [[nodiscard]] std::span<const double> scores() const { return scores_; }

  friend bool operator==(const BeliefMatrix&, const BeliefMatrix&) = default;

 private:
  std::size_t nodes_;
  std::size_t sources_;
  std::vector<double> scores_;
};

/// Uniform prior 1/m. Requires n >= 2 and m >= 1.
[[nodiscard]] BeliefMatrix init_beliefs(std::size_t n, std::size_t m);

/// Picks the source maximizing the summed belief of all other nodes; ties go
/// to the lowest source index.
[[nodiscard]] AggregationOutcome repag_select(NodeDataSet data, const BeliefMatrix& beliefs,
                                              std::size_t own_index);

/// Magnitude of a REP-AG reinforcement for one shared result: 1 when it is the
/// consensus value, otherwise the fraction of shared results equal to it.
[[nodiscard]] double repag_delta(const DataValue& result, std::span<const DataValue> shared_results,
                                 const std::optional<DataValue>& consensus_value);

/// Adds delta(R_k) to every (k, j) with k != own_index and R_k == X_j.
void repag_update(BeliefMatrix& beliefs, NodeDataSet data,
                  std::span<const DataValue> shared_results,
                  const std::optional<DataValue>& consensus_value, std::size_t own_index);

// Number of entries in `values` equal to `value`.
[[nodiscard]] std::size_t count_equal(std::span<const DataValue> values, const DataValue& value);

}  // namespace oracle_lab
