#include "oracle_lab/consensus.hpp"

#include <algorithm>

#include "oracle_lab/errors.hpp"

namespace oracle_lab {
namespace {

void check_preconditions(std::span<const DataValue> representatives, std::size_t threshold) {
  if (representatives.empty()) throw DomainError("threshold consensus over no representatives");
  if (threshold < 1 || threshold > representatives.size()) {
    throw ContractViolation("threshold must satisfy 1 <= t <= N");
  }
}

template <typename Fn>
void for_each_run(std::span<const DataValue> representatives, Fn&& fn) {
  std::vector<DataValue> sorted(representatives.begin(), representatives.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    fn(sorted[i], j - i);
    i = j;
  }
}

}  // namespace

ConsensusOutcome threshold_consensus(std::span<const DataValue> representatives,
                                     std::size_t threshold) {
  check_preconditions(representatives, threshold);
  ConsensusOutcome out;
  DataValue best{};
  // Runs arrive in ascending order, so strict > keeps the smallest on ties.
  for_each_run(representatives, [&](const DataValue& value, std::size_t count) {
    if (count > out.support_count) {
      out.support_count = count;
      best = value;
    }
  });
  out.success = out.support_count >= threshold;
  if (out.success) out.value = best;
  out.shared_results.assign(representatives.begin(), representatives.end());
  out.benefit = task_benefit(representatives, threshold);
  return out;
}

std::size_t task_benefit(std::span<const DataValue> representatives, std::size_t threshold) {
  check_preconditions(representatives, threshold);
  std::size_t benefit = 0;
  // count - 1 others >= t - 1  <=>  count >= t
  for_each_run(representatives, [&](const DataValue&, std::size_t count) {
    if (count >= threshold) benefit += count;
  });
  return benefit;
}

}  // namespace oracle_lab
