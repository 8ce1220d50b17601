#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "oracle_lab/signal.hpp"

namespace oracle_lab {

struct ConsensusOutcome {
  bool success = false;
  /// R*, present only on success.
  std::optional<DataValue> value;
  /// Multiplicity of the most common representative.
  std::size_t support_count = 0;
  /// All N representatives, published whether or not consensus succeeded.
  std::vector<DataValue> shared_results;
  std::size_t benefit = 0;
};

/// Equality-count stand-in for threshold signing: succeeds when some
/// representative is held by at least `threshold` nodes. Multiplicity ties go
/// to the smallest value.
///
/// Throws DomainError on empty input, ContractViolation unless
/// 1 <= threshold <= N.
[[nodiscard]] ConsensusOutcome threshold_consensus(std::span<const DataValue> representatives,
                                                   std::size_t threshold);

/// Number of nodes whose representative is also held by at least
/// threshold - 1 other nodes.
[[nodiscard]] std::size_t task_benefit(std::span<const DataValue> representatives,
                                       std::size_t threshold);

}  // namespace oracle_lab
