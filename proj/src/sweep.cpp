#include "oracle_lab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include <fmt/format.h>

#include "oracle_lab/errors.hpp"
#include "oracle_lab/export.hpp"

namespace oracle_lab {

void SweepSpec::validate() const {
  if (frequencies.empty() || strategies.empty() || timing.empty() || latency_kinds.empty() ||
      node_counts.empty() || thresholds.empty()) {
    throw ConfigError("sweep: every axis needs at least one value");
  }
}

std::vector<SweepPoint> expand_sweep(const SweepSpec& spec, const SimConfig& base) {
  spec.validate();
  std::vector<SweepPoint> points;
  for (double f : spec.frequencies) {
    for (auto strategy : spec.strategies) {
      for (bool timing : spec.timing) {
        for (auto kind : spec.latency_kinds) {
          for (std::size_t n : spec.node_counts) {
            for (const auto& threshold : spec.thresholds) {
              SimConfig c = base;
              c.signal.frequency_hz = f;
              c.strategy = strategy;
              c.timing_enabled = timing;
              c.latency.kind = kind;
              c.n_nodes = n;
              c.threshold = threshold.value_or(n / 2 + 1);
              c.validate();
              std::string name = fmt::format("f{}_{}_{}_{}_n{}_t{}", format_double(f),
                                             to_string(strategy), timing ? "timopt" : "notim",
                                             to_string(kind), n, c.threshold);
              points.push_back({std::move(name), std::move(c)});
            }
          }
        }
      }
    }
  }
  return points;
}

std::vector<SweepRow> run_sweep(const std::vector<SweepPoint>& points, std::size_t workers,
                                const std::optional<std::filesystem::path>& out_dir,
                                const ExportOptions& options) {
  std::vector<SweepRow> rows(points.size());
  if (out_dir) ensure_directory(*out_dir);

  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(points.size(), 1));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t worker) {
    try {
      for (std::size_t i = next++; i < points.size(); i = next++) {
        const auto& point = points[i];
        CampaignResult result;
        if (out_dir) {
          TaskDumper dumper(point.config, *out_dir / point.name, options);
          result = run_campaign(point.config, dumper.observer());
          export_metrics(result, *out_dir / point.name, options);
        } else {
          result = run_campaign(point.config);
        }
        rows[i] = {point, std::move(result.summary)};
      }
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };

  std::vector<std::thread> threads;
  for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(work, w);
  work(0);
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  if (out_dir) {
    const auto path = *out_dir / "sweep.csv";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "name,frequency_hz,strategy,timing,latency,n_nodes,threshold,success_rate,"
           "mean_benefit,mean_benefit_successful,converged_nodes\n";
    for (const auto& row : rows) {
      const auto& c = row.point.config;
      const auto converged = std::count_if(row.summary.convergence.begin(),
                                           row.summary.convergence.end(),
                                           [](const auto& v) { return v.has_value(); });
      out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", row.point.name,
                         format_double(c.signal.frequency_hz), to_string(c.strategy),
                         c.timing_enabled ? "on" : "off", to_string(c.latency.kind), c.n_nodes,
                         c.threshold, format_double(row.summary.success_rate),
                         format_double(row.summary.mean_benefit),
                         format_double(row.summary.mean_benefit_successful), converged);
    }
    if (!out.flush()) throw IoError("failed writing " + path.string());
  }
  return rows;
}

}  // namespace oracle_lab
