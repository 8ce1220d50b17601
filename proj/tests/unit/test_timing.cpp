#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracle_lab/errors.hpp"
#include "oracle_lab/timing.hpp"

using namespace oracle_lab;

TEST_CASE("timing: uniform tensor picks the shortest wait") {
  const auto tensor = init_timing_beliefs(3, 2, 10);
  for (double x : tensor.scores()) CHECK(x == doctest::Approx(0.1));
  const WaitStrategySpace space{1.0, 10};
  const auto choice = choose_wait(tensor, 1, 0, space);
  CHECK(choice.slot == 0);
  CHECK(choice.wait_s == doctest::Approx(0.1));
}

TEST_CASE("timing: choice follows the other nodes' summed scores") {
  auto tensor = init_timing_beliefs(3, 1, 2);
  tensor.at(0, 0, 0) = 50.0;  // own row ignored
  tensor.at(1, 0, 0) = 0.2;
  tensor.at(1, 0, 1) = 0.8;
  tensor.at(2, 0, 0) = 0.4;
  tensor.at(2, 0, 1) = 0.6;
  const WaitStrategySpace space{0.9, 2};
  const auto choice = choose_wait(tensor, 0, 0, space);
  CHECK(choice.slot == 1);
  CHECK(choice.wait_s == doctest::Approx(0.9));
  CHECK_THROWS_AS((void)choose_wait(tensor, 1, 0, space), ContractViolation);
}

TEST_CASE("timing: slot grid is omega/k .. omega") {
  const WaitStrategySpace space{1.0, 10};
  for (std::size_t l = 0; l < 10; ++l) {
    CHECK(space.slot(l) == doctest::Approx(0.1 * static_cast<double>(l + 1)));
  }
}

TEST_CASE("timing: adjustment magnitudes") {
  const DataValue a{0, 1};
  const DataValue b{0, 2};
  std::vector<DataValue> shared(21, a);
  std::fill(shared.begin(), shared.begin() + 7, b);
  CHECK(timopt_delta(a, shared, a, 11) == 1.0);
  CHECK(timopt_delta(b, shared, a, 11) == doctest::Approx(-4.0 / 11.0));
  CHECK(timopt_delta(a, shared, std::nullopt, 11) == doctest::Approx(3.0 / 11.0));
}

TEST_CASE("timing: update uses the slot this node actually waited") {
  const std::vector<DataValue> data{{0, 5}, {0, 6}};
  const std::vector<DataValue> shared{{0, 5}, {0, 5}, {0, 6}};
  const std::vector<std::size_t> slots{1, 0};
  auto tensor = init_timing_beliefs(3, 2, 2);
  timopt_update(tensor, slots, data, shared, DataValue{0, 5}, 2, 0);
  CHECK(tensor.at(0, 0, 1) == doctest::Approx(0.5));
  CHECK(tensor.at(1, 0, 1) == doctest::Approx(1.5));
  CHECK(tensor.at(1, 0, 0) == doctest::Approx(0.5));
  CHECK(tensor.at(1, 1, 0) == doctest::Approx(0.5));
  // Node 2's value 6 appears once against t = 2: delta (1 - 2) / 2.
  CHECK(tensor.at(2, 1, 0) == doctest::Approx(0.0));
  CHECK(tensor.at(2, 0, 1) == doctest::Approx(0.5));

  auto untouched = init_timing_beliefs(3, 2, 2);
  timopt_update(untouched, slots, data, std::vector<DataValue>{{0, 9}, {0, 9}, {0, 9}},
                DataValue{0, 9}, 2, 0);
  CHECK(untouched == init_timing_beliefs(3, 2, 2));

  const std::vector<std::size_t> bad_slots{2, 0};
  CHECK_THROWS_AS(timopt_update(tensor, bad_slots, data, shared, std::nullopt, 2, 0),
                  ContractViolation);
}

TEST_CASE("timing: running latency mean") {
  RunningLatencyStats s;
  s = update_omega(s, 0.5);
  CHECK(s.mean == doctest::Approx(0.5));
  s = update_omega(s, 0.7);
  CHECK(s.mean == doctest::Approx(0.6));
  CHECK(s.count == 2);
  for (int i = 0; i < 10000; ++i) s = update_omega(s, 0.0);
  CHECK(s.mean < 1e-3);
  CHECK_THROWS_AS((void)update_omega(s, -0.1), ContractViolation);
}
