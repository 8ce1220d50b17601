#pragma once

#include <filesystem>
#include <fstream>
#include <memory>

#include "oracle_lab/config.hpp"
#include "oracle_lab/engine.hpp"

namespace oracle_lab {

/// Creates `dir` (and parents). Throws IoError naming the path on failure.
void ensure_directory(const std::filesystem::path& dir);

/// Writes summary.json, tasks.csv, strategy.csv and, if enabled, timing.csv
/// into `out_dir`. Column order is fixed; see docs/output-schema.md.
void export_metrics(const CampaignResult& result, const std::filesystem::path& out_dir,
                    const ExportOptions& options = {});

/// Streams per-task belief snapshots and waits while a campaign runs.
/// Only the files enabled in `options` and meaningful for the config are
/// created.
class TaskDumper {
 public:
  TaskDumper(const SimConfig& config, const std::filesystem::path& out_dir,
             const ExportOptions& options);

  void operator()(const TaskRecord& record, std::span<const NodeState> nodes);

  /// Observer that forwards to this dumper; the dumper must outlive it.
  [[nodiscard]] TaskObserver observer();

 private:
  std::unique_ptr<std::ofstream> rep_;
  std::unique_ptr<std::ofstream> tim_;
  std::unique_ptr<std::ofstream> waits_;
};

}  // namespace oracle_lab
