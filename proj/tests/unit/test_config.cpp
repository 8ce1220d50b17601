#include <doctest.h>

#include <string>

#include "oracle_lab/config.hpp"
#include "oracle_lab/errors.hpp"

using namespace oracle_lab;

TEST_CASE("config: key/value parsing skips comments and blank lines") {
  const auto kv = parse_key_values(
      "# header\n"
      "\n"
      "nodes.n = 31   # trailing comment\n"
      "  aggregation.strategy=median\n");
  REQUIRE(kv.size() == 2);
  CHECK(kv[0].first == "nodes.n");
  CHECK(kv[0].second == "31");
  CHECK(kv[1].first == "aggregation.strategy");
  CHECK(kv[1].second == "median");
}

TEST_CASE("config: malformed documents are rejected") {
  CHECK_THROWS_AS((void)parse_key_values("nodes.n 21\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_key_values("= 21\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_key_values("nodes.n = 1\nnodes.n = 2\n"), ConfigError);
  CHECK_THROWS_AS((void)config_from_key_values({{"nodes.count", "21"}}), ConfigError);
  CHECK_THROWS_AS((void)config_from_key_values({{"nodes.n", "many"}}), ConfigError);
  CHECK_THROWS_AS((void)config_from_key_values({{"timing.enabled", "maybe"}}), ConfigError);
  CHECK_THROWS_AS((void)config_from_key_values({{"signal.frequency_hz", "5x"}}), ConfigError);
}

TEST_CASE("config: settings reach the simulation config") {
  const auto rc = config_from_key_values({{"nodes.n", "31"},
                                          {"consensus.threshold", "16"},
                                          {"latency.kind", "uniform"},
                                          {"timing.enabled", "false"},
                                          {"signal.phase_offsets", "0,0.05,0,0,0.1"},
                                          {"engine.seed", "99"},
                                          {"output.dump_waits", "true"}});
  CHECK(rc.sim.n_nodes == 31);
  CHECK(rc.sim.threshold == 16);
  CHECK(rc.sim.latency.kind == LatencyKind::kUniform);
  CHECK_FALSE(rc.sim.timing_enabled);
  REQUIRE(rc.sim.signal.phase_offsets.size() == 5);
  CHECK(rc.sim.signal.phase_offsets[1] == 0.05);
  CHECK(rc.sim.master_seed == 99);
  CHECK(rc.seed_explicit);
  CHECK(rc.output.dump_waits);
  CHECK_FALSE(config_from_key_values({}).seed_explicit);
}

TEST_CASE("config: echo round trips through the parser") {
  RunConfig rc;
  rc.sim.signal.frequency_hz = 8.0;
  rc.sim.latency.gaussian_std = 0.1 + 0.2;  // not exactly representable in short decimal
  rc.sim.strategy = AggregationStrategy::kVote;
  rc.sim.task_phase = TaskPhase::kRandom;
  rc.sim.signal.phase_offsets = {0.0, 0.01, 0.0, 0.0, 0.0};
  const auto echo = config_echo(rc.sim);
  const auto back = config_from_key_values(echo);
  CHECK(config_echo(back.sim) == echo);
  CHECK(back.sim.latency.gaussian_std == rc.sim.latency.gaussian_std);
  CHECK(back.sim.strategy == AggregationStrategy::kVote);
  CHECK(back.sim.task_phase == TaskPhase::kRandom);
}

TEST_CASE("config: doubles are printed in shortest round-trip form") {
  CHECK(format_double(0.7) == "0.7");
  CHECK(format_double(5.0) == "5");
  CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("config: missing files raise an I/O error") {
  CHECK_THROWS_AS((void)load_config("/nonexistent/dir/none.cfg"), IoError);
}

TEST_CASE("config: the committed reference file matches the built-in defaults") {
  const auto rc = load_config(std::string(ORACLE_LAB_SOURCE_DIR) + "/configs/table1.cfg");
  CHECK(config_echo(rc.sim) == config_echo(SimConfig{}));
  CHECK_FALSE(rc.seed_explicit);
  CHECK(rc.output.write_timing);
}
