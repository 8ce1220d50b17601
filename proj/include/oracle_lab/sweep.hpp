#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "oracle_lab/config.hpp"
#include "oracle_lab/engine.hpp"

namespace oracle_lab {

/// Grid of campaigns. Every axis must be nonempty. A threshold of nullopt
/// means the simple majority floor(N/2) + 1 for each node count.
struct SweepSpec {
  std::vector<double> frequencies{2.0, 5.0, 8.0, 10.0};
  std::vector<AggregationStrategy> strategies{
      AggregationStrategy::kMedian, AggregationStrategy::kMode, AggregationStrategy::kVote,
      AggregationStrategy::kRepAg};
  std::vector<bool> timing{false, true};
  std::vector<LatencyKind> latency_kinds{LatencyKind::kGaussian};
  std::vector<std::size_t> node_counts{21};
  std::vector<std::optional<std::size_t>> thresholds{std::size_t{11}};

  void validate() const;
};

struct SweepPoint {
  std::string name;
  SimConfig config;
};

/// Cartesian product of the grid axes applied on top of `base`, in a fixed
/// order (frequency, strategy, timing, latency, nodes, threshold).
[[nodiscard]] std::vector<SweepPoint> expand_sweep(const SweepSpec& spec, const SimConfig& base);

struct SweepRow {
  SweepPoint point;
  CampaignSummary summary;
};

/// Runs every point on up to `workers` threads (0 = hardware concurrency).
/// When `out_dir` is set each campaign exports into its own subdirectory and
/// sweep.csv is written at the top level.
[[nodiscard]] std::vector<SweepRow> run_sweep(const std::vector<SweepPoint>& points,
                                              std::size_t workers,
                                              const std::optional<std::filesystem::path>& out_dir,
                                              const ExportOptions& options);

}  // namespace oracle_lab
