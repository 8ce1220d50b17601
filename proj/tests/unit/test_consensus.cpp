#include <doctest.h>

#include <algorithm>
#include <vector>

#include "oracle_lab/consensus.hpp"
#include "oracle_lab/errors.hpp"
#include "oracle_lab/rng.hpp"

using namespace oracle_lab;

namespace {

std::vector<DataValue> groups(std::initializer_list<std::pair<std::int64_t, std::size_t>> spec) {
  std::vector<DataValue> out;
  for (const auto& [value, copies] : spec) out.insert(out.end(), copies, DataValue{0, value});
  return out;
}

// Per-node evaluation: node i benefits when at least t-1 other nodes share
// its representative.
std::size_t brute_benefit(const std::vector<DataValue>& reps, std::size_t t) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    std::size_t others = 0;
    for (std::size_t k = 0; k < reps.size(); ++k) others += (k != i && reps[k] == reps[i]);
    total += (others + 1 >= t);
  }
  return total;
}

}  // namespace

TEST_CASE("consensus: threshold examples") {
  auto out = threshold_consensus(groups({{1, 11}, {2, 10}}), 11);
  CHECK(out.success);
  CHECK(out.value == DataValue{0, 1});
  CHECK(out.support_count == 11);
  CHECK(out.shared_results.size() == 21);

  std::vector<DataValue> distinct;
  for (std::int64_t i = 0; i < 21; ++i) distinct.push_back({0, i});
  out = threshold_consensus(distinct, 11);
  CHECK_FALSE(out.success);
  CHECK_FALSE(out.value.has_value());
  CHECK(out.support_count == 1);

  out = threshold_consensus(groups({{4, 21}}), 11);
  CHECK(out.success);
  CHECK(out.support_count == 21);
}

TEST_CASE("consensus: multiplicity ties resolve to the smallest value") {
  const auto out = threshold_consensus(groups({{9, 3}, {2, 3}}), 3);
  CHECK(out.success);
  CHECK(out.value == DataValue{0, 2});
}

TEST_CASE("benefit: examples") {
  std::vector<DataValue> reps = groups({{1, 16}});
  for (std::int64_t i = 0; i < 5; ++i) reps.push_back({0, 100 + i});
  CHECK(task_benefit(reps, 11) == 16);

  std::vector<DataValue> distinct;
  for (std::int64_t i = 0; i < 21; ++i) distinct.push_back({0, i});
  CHECK(task_benefit(distinct, 11) == 0);

  CHECK(task_benefit(groups({{1, 10}, {2, 11}}), 11) == 11);
  CHECK(task_benefit(groups({{1, 10}, {2, 11}}), 10) == 21);
}

TEST_CASE("consensus and benefit agree with per-node brute force") {
  Rng rng(8);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 1 + rng.index(25);
    const std::size_t t = 1 + rng.index(n);
    const std::size_t alphabet = 1 + rng.index(5);
    std::vector<DataValue> reps(n);
    for (auto& r : reps) {
      r.stream_id = static_cast<std::uint32_t>(rng.index(2));
      r.epoch_index = static_cast<std::int64_t>(rng.index(alphabet));
    }
    std::size_t best = 0;
    for (const auto& r : reps) {
      best = std::max(best, static_cast<std::size_t>(std::count(reps.begin(), reps.end(), r)));
    }
    const auto out = threshold_consensus(reps, t);
    CHECK(out.support_count == best);
    CHECK(out.success == (best >= t));
    CHECK(out.benefit == brute_benefit(reps, t));
    CHECK(task_benefit(reps, t) == brute_benefit(reps, t));
    if (out.success) {
      CHECK(out.benefit >= t);
      CHECK(static_cast<std::size_t>(std::count(reps.begin(), reps.end(), *out.value)) == best);
    }
  }
}

TEST_CASE("consensus: contract errors") {
  const std::vector<DataValue> empty;
  CHECK_THROWS_AS((void)threshold_consensus(empty, 1), DomainError);
  CHECK_THROWS_AS((void)threshold_consensus(groups({{1, 3}}), 0), ContractViolation);
  CHECK_THROWS_AS((void)threshold_consensus(groups({{1, 3}}), 4), ContractViolation);
}
