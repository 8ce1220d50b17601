#include "oracle_lab/aggregation.hpp"

#include <algorithm>
#include <string>

#include "oracle_lab/errors.hpp"

namespace oracle_lab {
namespace {

void require_nonempty(NodeDataSet data, const char* what) {
  if (data.empty()) throw DomainError(std::string(what) + ": empty data set");
}

std::optional<std::size_t> first_index_of(NodeDataSet data, const DataValue& value) {
  auto it = std::find(data.begin(), data.end(), value);
  if (it == data.end()) return std::nullopt;
  return static_cast<std::size_t>(it - data.begin());
}

struct Tally {
  DataValue value;
  std::size_t count;
};

// Distinct values in ascending order with their multiplicities.
std::vector<Tally> tally(NodeDataSet data) {
  std::vector<DataValue> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Tally> out;
  for (const auto& v : sorted) {
    if (!out.empty() && out.back().value == v) {
      ++out.back().count;
    } else {
      out.push_back({v, 1});
    }
  }
  return out;
}

AggregationOutcome outcome_for(NodeDataSet data, const DataValue& value) {
  return {value, first_index_of(data, value)};
}

}  // namespace

std::string_view to_string(AggregationStrategy strategy) {
  switch (strategy) {
    case AggregationStrategy::kMedian: return "median";
    case AggregationStrategy::kMode: return "mode";
    case AggregationStrategy::kVote: return "vote";
    case AggregationStrategy::kRepAg: return "repag";
  }
  return "?";
}

AggregationStrategy parse_aggregation_strategy(std::string_view text) {
  if (text == "median") return AggregationStrategy::kMedian;
  if (text == "mode") return AggregationStrategy::kMode;
  if (text == "vote") return AggregationStrategy::kVote;
  if (text == "repag") return AggregationStrategy::kRepAg;
  throw ConfigError("aggregation.strategy must be one of median, mode, vote, repag; got '" +
                    std::string(text) + "'");
}

AggregationOutcome median_agg(NodeDataSet data) {
  require_nonempty(data, "median_agg");
  std::vector<DataValue> sorted(data.begin(), data.end());
  auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  return {*mid, std::nullopt};
}

AggregationOutcome mode_agg(NodeDataSet data, Rng& rng) {
  require_nonempty(data, "mode_agg");
  const double u = rng.uniform01();
  const auto counts = tally(data);
  std::size_t best = 0;
  for (const auto& t : counts) best = std::max(best, t.count);

  std::vector<DataValue> tied;
  for (const auto& t : counts) {
    if (t.count == best) tied.push_back(t.value);
  }
  if (tied.size() == 1) return outcome_for(data, tied.front());
  auto pick = static_cast<std::size_t>(u * static_cast<double>(tied.size()));
  return outcome_for(data, tied[std::min(pick, tied.size() - 1)]);
}

AggregationOutcome majority_vote_agg(NodeDataSet data, Rng& rng) {
  require_nonempty(data, "majority_vote_agg");
  const double u = rng.uniform01();
  const std::size_t quorum = data.size() / 2 + 1;
  for (const auto& t : tally(data)) {
    if (t.count >= quorum) return outcome_for(data, t.value);
  }
  auto pick = std::min(static_cast<std::size_t>(u * static_cast<double>(data.size())),
                       data.size() - 1);
  return {data[pick], pick};
}

BeliefMatrix::BeliefMatrix(std::size_t num_nodes, std::size_t num_sources, double fill)
    : nodes_(num_nodes), sources_(num_sources), scores_(num_nodes * num_sources, fill) {}

BeliefMatrix init_beliefs(std::size_t n, std::size_t m) {
  if (n < 2 || m < 1) throw ConfigError("init_beliefs requires n >= 2 and m >= 1");
  return BeliefMatrix(n, m, 1.0 / static_cast<double>(m));
}

AggregationOutcome repag_select(NodeDataSet data, const BeliefMatrix& beliefs,
                                std::size_t own_index) {
  if (beliefs.num_sources() != data.size() || own_index >= beliefs.num_nodes()) {
    throw ContractViolation("repag_select: belief matrix does not match the data set");
  }
  std::size_t best = 0;
  double best_score = 0.0;
  for (std::size_t j = 0; j < data.size(); ++j) {
    double expected = 0.0;
    for (std::size_t k = 0; k < beliefs.num_nodes(); ++k) {
      if (k != own_index) expected += beliefs.at(k, j);
    }
    if (j == 0 || expected > best_score) {
      best = j;
      best_score = expected;
    }
  }
  return {data[best], best};
}

std::size_t count_equal(std::span<const DataValue> values, const DataValue& value) {
  return static_cast<std::size_t>(std::count(values.begin(), values.end(), value));
}

double repag_delta(const DataValue& result, std::span<const DataValue> shared_results,
                   const std::optional<DataValue>& consensus_value) {
  if (consensus_value && result == *consensus_value) return 1.0;
  return static_cast<double>(count_equal(shared_results, result)) /
         static_cast<double>(shared_results.size());
}

void repag_update(BeliefMatrix& beliefs, NodeDataSet data,
                  std::span<const DataValue> shared_results,
                  const std::optional<DataValue>& consensus_value, std::size_t own_index) {
  if (shared_results.size() != beliefs.num_nodes() || data.size() != beliefs.num_sources() ||
      own_index >= beliefs.num_nodes()) {
    throw ContractViolation("repag_update: shapes of beliefs, data and shared results disagree");
  }
  for (std::size_t k = 0; k < shared_results.size(); ++k) {
    if (k == own_index) continue;
    const DataValue& result = shared_results[k];
    if (std::find(data.begin(), data.end(), result) == data.end()) continue;
    const double delta = repag_delta(result, shared_results, consensus_value);
    for (std::size_t j = 0; j < data.size(); ++j) {
      if (data[j] == result) beliefs.at(k, j) += delta;
    }
  }
}

}  // namespace oracle_lab
