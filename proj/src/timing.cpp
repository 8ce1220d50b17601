#include "oracle_lab/timing.hpp"

#include <algorithm>

#include "oracle_lab/aggregation.hpp"
#include "oracle_lab/errors.hpp"

namespace oracle_lab {

TimingBeliefTensor::TimingBeliefTensor(std::size_t num_nodes, std::size_t num_sources,
                                       std::size_t num_slots)
    : nodes_(num_nodes),
      sources_(num_sources),
      slots_(num_slots),
      scores_(num_nodes * num_sources * num_slots, 0.0) {}

TimingBeliefTensor init_timing_beliefs(std::size_t n, std::size_t m, std::size_t k) {
  if (n < 2 || m < 1 || k < 1) {
    throw ConfigError("timing beliefs require n >= 2, m >= 1 and k >= 1");
  }
  TimingBeliefTensor tensor(n, m, k);
  const double prior = 1.0 / static_cast<double>(k);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t l = 0; l < k; ++l) tensor.at(a, j, l) = prior;
    }
  }
  return tensor;
}

WaitChoice choose_wait(const TimingBeliefTensor& tensor, std::size_t source, std::size_t own_index,
                       const WaitStrategySpace& space) {
  if (space.k != tensor.num_slots() || source >= tensor.num_sources() ||
      own_index >= tensor.num_nodes()) {
    throw ContractViolation("choose_wait: tensor shape does not match the request");
  }
  std::size_t best = 0;
  double best_score = 0.0;
  for (std::size_t l = 0; l < space.k; ++l) {
    double expected = 0.0;
    for (std::size_t k = 0; k < tensor.num_nodes(); ++k) {
      if (k != own_index) expected += tensor.at(k, source, l);
    }
    if (l == 0 || expected > best_score) {
      best = l;
      best_score = expected;
    }
  }
  return {best, space.slot(best)};
}

double timopt_delta(const DataValue& result, std::span<const DataValue> shared_results,
                    const std::optional<DataValue>& consensus_value, std::size_t threshold) {
  if (consensus_value && result == *consensus_value) return 1.0;
  const auto t = static_cast<double>(threshold);
  return (static_cast<double>(count_equal(shared_results, result)) - t) / t;
}

void timopt_update(TimingBeliefTensor& tensor, std::span<const std::size_t> own_slots,
                   std::span<const DataValue> data, std::span<const DataValue> shared_results,
                   const std::optional<DataValue>& consensus_value, std::size_t threshold,
                   std::size_t own_index) {
  if (own_slots.size() != tensor.num_sources() || data.size() != tensor.num_sources() ||
      shared_results.size() != tensor.num_nodes() || own_index >= tensor.num_nodes()) {
    throw ContractViolation("timopt_update: shapes of tensor, slots, data and results disagree");
  }
  if (threshold < 1) throw ContractViolation("timopt_update: threshold must be positive");
  for (std::size_t j = 0; j < own_slots.size(); ++j) {
    if (own_slots[j] >= tensor.num_slots()) {
      throw ContractViolation("timopt_update: slot index out of range");
    }
  }

  for (std::size_t k = 0; k < shared_results.size(); ++k) {
    if (k == own_index) continue;
    const DataValue& result = shared_results[k];
    if (std::find(data.begin(), data.end(), result) == data.end()) continue;
    const double delta = timopt_delta(result, shared_results, consensus_value, threshold);
    for (std::size_t j = 0; j < data.size(); ++j) {
      if (data[j] == result) tensor.at(k, j, own_slots[j]) += delta;
    }
  }
}

RunningLatencyStats update_omega(RunningLatencyStats stats, double observed_latency) {
  if (!(observed_latency >= 0.0)) {
    throw ContractViolation("update_omega: latency must be nonnegative");
  }
  ++stats.count;
  stats.mean += (observed_latency - stats.mean) / static_cast<double>(stats.count);
  return stats;
}

}  // namespace oracle_lab
