#include "oracle_lab/export.hpp"

#include <fmt/format.h>

#include <nlohmann/json.hpp>

#include "oracle_lab/errors.hpp"

namespace oracle_lab {
namespace {

namespace fs = std::filesystem;

std::unique_ptr<std::ofstream> open_csv(const fs::path& path, std::string_view header) {
  auto out = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
  if (!*out) throw IoError("cannot open " + path.string() + " for writing");
  *out << header << '\n';
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string slot_text(const std::optional<std::size_t>& slot) {
  return slot ? std::to_string(*slot) : "-1";
}

void write_summary(const CampaignResult& result, const fs::path& path) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config_echo(result.config)) config[key] = value;
  doc["config"] = config;
  doc["n_tasks"] = result.records.size();
  doc["success_rate"] = result.summary.success_rate;
  doc["mean_benefit"] = result.summary.mean_benefit;
  doc["mean_benefit_successful"] = result.summary.mean_benefit_successful;

  nlohmann::ordered_json convergence = nlohmann::ordered_json::array();
  std::size_t converged = 0;
  for (const auto& index : result.summary.convergence) {
    if (index) {
      convergence.push_back(*index);
      ++converged;
    } else {
      convergence.push_back(nullptr);
    }
  }
  doc["convergence"] = convergence;
  doc["converged_nodes"] = converged;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  finish(out, path);
}

}  // namespace

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string() +
                  (ec ? ": " + ec.message() : std::string()));
  }
}

void export_metrics(const CampaignResult& result, const fs::path& out_dir,
                    const ExportOptions& options) {
  ensure_directory(out_dir);
  write_summary(result, out_dir / "summary.json");

  const auto tasks_path = out_dir / "tasks.csv";
  auto tasks = open_csv(tasks_path, "task_id,success,support_count,benefit,rolling_success_50");
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const auto& r = result.records[i];
    *tasks << fmt::format("{},{},{},{},{}\n", r.task_id, r.consensus.success ? 1 : 0,
                          r.consensus.support_count, r.consensus.benefit,
                          format_double(result.summary.rolling_success[i]));
  }
  finish(*tasks, tasks_path);

  const std::size_t m = result.config.m_sources;
  const auto strategy_path = out_dir / "strategy.csv";
  std::string header = "task_id,node_id,chosen_source";
  for (std::size_t j = 0; j < m; ++j) header += fmt::format(",slot_{}", j);
  auto strategy = open_csv(strategy_path, header);
  for (const auto& r : result.records) {
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      const auto& chosen = r.nodes[i].chosen_source;
      std::string line = fmt::format("{},{},{}", r.task_id, i,
                                     chosen ? std::to_string(*chosen) : std::string("-1"));
      for (std::size_t j = 0; j < m; ++j) line += "," + slot_text(r.cell(i, j).slot);
      *strategy << line << '\n';
    }
  }
  finish(*strategy, strategy_path);

  if (options.write_timing) {
    const auto timing_path = out_dir / "timing.csv";
    auto timing = open_csv(
        timing_path, "task_id,node_id,source_id,wait_s,latency_s,receive_time_s,stream_id,epoch");
    for (const auto& r : result.records) {
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const auto& c = r.cell(i, j);
          *timing << fmt::format("{},{},{},{},{},{},{},{}\n", r.task_id, i, j,
                                 format_double(c.wait_s), format_double(c.latency_s),
                                 format_double(c.receive_time_s), c.value.stream_id,
                                 c.value.epoch_index);
        }
      }
    }
    finish(*timing, timing_path);
  }
}

TaskDumper::TaskDumper(const SimConfig& config, const fs::path& out_dir,
                       const ExportOptions& options) {
  if (!options.dump_beliefs && !options.dump_waits) return;
  ensure_directory(out_dir);
  if (options.dump_beliefs && config.strategy == AggregationStrategy::kRepAg) {
    rep_ = open_csv(out_dir / "beliefs_rep.csv", "task_id,node_id,k,j,score");
  }
  if (options.dump_beliefs && config.timing_enabled) {
    tim_ = open_csv(out_dir / "beliefs_tim.csv", "task_id,node_id,k,j,l,score");
  }
  if (options.dump_waits && config.timing_enabled) {
    waits_ = open_csv(out_dir / "waits.csv", "task_id,node_id,source_id,slot,wait_s");
  }
}

void TaskDumper::operator()(const TaskRecord& record, std::span<const NodeState> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    if (rep_ && node.rep_beliefs) {
      const auto& b = *node.rep_beliefs;
      for (std::size_t k = 0; k < b.num_nodes(); ++k) {
        if (k == i) continue;
        for (std::size_t j = 0; j < b.num_sources(); ++j) {
          *rep_ << fmt::format("{},{},{},{},{}\n", record.task_id, i, k, j,
                               format_double(b.at(k, j)));
        }
      }
    }
    if (tim_ && node.timing_beliefs) {
      const auto& b = *node.timing_beliefs;
      for (std::size_t k = 0; k < b.num_nodes(); ++k) {
        if (k == i) continue;
        for (std::size_t j = 0; j < b.num_sources(); ++j) {
          for (std::size_t l = 0; l < b.num_slots(); ++l) {
            *tim_ << fmt::format("{},{},{},{},{},{}\n", record.task_id, i, k, j, l,
                                 format_double(b.at(k, j, l)));
          }
        }
      }
    }
    if (waits_) {
      for (std::size_t j = 0; j < record.m_sources; ++j) {
        const auto& c = record.cell(i, j);
        *waits_ << fmt::format("{},{},{},{},{}\n", record.task_id, i, j, slot_text(c.slot),
                               format_double(c.wait_s));
      }
    }
  }
}

TaskObserver TaskDumper::observer() {
  return [this](const TaskRecord& record, std::span<const NodeState> nodes) {
    (*this)(record, nodes);
  };
}

}  // namespace oracle_lab
