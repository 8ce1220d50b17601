#include "oracle_lab/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "oracle_lab/errors.hpp"

namespace oracle_lab {
namespace {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
  throw ConfigError(fmt::format("{}: expected {}, got '{}'", key, want, value));
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    bad_value(key, value, "a nonnegative integer");
  }
  return out;
}

std::size_t parse_size(std::string_view key, std::string_view value) {
  return static_cast<std::size_t>(parse_u64(key, value));
}

double parse_real(std::string_view key, std::string_view value) {
  // from_chars for double is not available in every supported toolchain.
  std::string copy(value);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(copy, &used);
  } catch (const std::exception&) {
    bad_value(key, value, "a number");
  }
  if (used != copy.size()) bad_value(key, value, "a number");
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "on" || value == "1") return true;
  if (value == "false" || value == "off" || value == "0") return false;
  bad_value(key, value, "true/false");
}

std::vector<double> parse_real_list(std::string_view key, std::string_view value) {
  std::vector<double> out;
  if (trim(value).empty()) return out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto piece = trim(value.substr(start, comma - start));
    out.push_back(parse_real(key, piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_double(double value) { return fmt::format("{}", value); }

std::vector<KeyValue> parse_key_values(std::string_view text) {
  std::vector<KeyValue> out;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(fmt::format("line {}: empty key", line_no));
    if (!seen.emplace(key).second) {
      throw ConfigError(fmt::format("line {}: duplicate key '{}'", line_no, key));
    }
    out.emplace_back(std::string(key), std::string(value));
  }
  return out;
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  SimConfig& sim = config.sim;
  if (key == "nodes.n") {
    sim.n_nodes = parse_size(key, value);
  } else if (key == "sources.m") {
    sim.m_sources = parse_size(key, value);
  } else if (key == "consensus.threshold") {
    sim.threshold = parse_size(key, value);
  } else if (key == "tasks.count") {
    sim.n_tasks = parse_size(key, value);
  } else if (key == "signal.frequency_hz") {
    sim.signal.frequency_hz = parse_real(key, value);
  } else if (key == "signal.origin_time") {
    sim.signal.origin_time = parse_real(key, value);
  } else if (key == "signal.phase_offsets") {
    sim.signal.phase_offsets = parse_real_list(key, value);
  } else if (key == "signal.mode") {
    sim.signal.mode = parse_signal_mode(value);
  } else if (key == "latency.kind") {
    sim.latency.kind = parse_latency_kind(value);
  } else if (key == "latency.gaussian_mean") {
    sim.latency.gaussian_mean = parse_real(key, value);
  } else if (key == "latency.gaussian_std") {
    sim.latency.gaussian_std = parse_real(key, value);
  } else if (key == "latency.uniform_low") {
    sim.latency.uniform_low = parse_real(key, value);
  } else if (key == "latency.uniform_high") {
    sim.latency.uniform_high = parse_real(key, value);
  } else if (key == "latency.perturbation_high") {
    sim.latency.perturbation_high = parse_real(key, value);
  } else if (key == "latency.persistence") {
    sim.latency.persistence = parse_latency_persistence(value);
  } else if (key == "aggregation.strategy") {
    sim.strategy = parse_aggregation_strategy(value);
  } else if (key == "timing.enabled") {
    sim.timing_enabled = parse_bool(key, value);
  } else if (key == "timing.k") {
    sim.timing_k = parse_size(key, value);
  } else if (key == "engine.seed") {
    sim.master_seed = parse_u64(key, value);
    config.seed_explicit = true;
  } else if (key == "engine.convergence_window") {
    sim.convergence_window = parse_size(key, value);
  } else if (key == "engine.task_spacing_epochs") {
    sim.task_spacing_epochs = parse_real(key, value);
  } else if (key == "engine.task_phase") {
    sim.task_phase = parse_task_phase(value);
  } else if (key == "engine.detection_jitter_s") {
    sim.detection_jitter_s = parse_real(key, value);
  } else if (key == "output.timing_csv") {
    config.output.write_timing = parse_bool(key, value);
  } else if (key == "output.dump_beliefs") {
    config.output.dump_beliefs = parse_bool(key, value);
  } else if (key == "output.dump_waits") {
    config.output.dump_waits = parse_bool(key, value);
  } else {
    throw ConfigError(fmt::format("unknown configuration key '{}'", key));
  }
}

RunConfig config_from_key_values(const std::vector<KeyValue>& entries) {
  RunConfig config;
  for (const auto& [key, value] : entries) apply_setting(config, key, value);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return config_from_key_values(parse_key_values(buffer.str()));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<KeyValue> config_echo(const SimConfig& c) {
  // An empty list means all zeros; echo it expanded so both spellings of the
  // same configuration produce identical output.
  std::vector<double> offsets = c.signal.phase_offsets;
  if (offsets.empty()) offsets.assign(c.m_sources, 0.0);
  std::string phases;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (i > 0) phases += ",";
    phases += format_double(offsets[i]);
  }
  return {
      {"nodes.n", std::to_string(c.n_nodes)},
      {"sources.m", std::to_string(c.m_sources)},
      {"consensus.threshold", std::to_string(c.threshold)},
      {"tasks.count", std::to_string(c.n_tasks)},
      {"signal.frequency_hz", format_double(c.signal.frequency_hz)},
      {"signal.origin_time", format_double(c.signal.origin_time)},
      {"signal.phase_offsets", phases},
      {"signal.mode", std::string(to_string(c.signal.mode))},
      {"latency.kind", std::string(to_string(c.latency.kind))},
      {"latency.gaussian_mean", format_double(c.latency.gaussian_mean)},
      {"latency.gaussian_std", format_double(c.latency.gaussian_std)},
      {"latency.uniform_low", format_double(c.latency.uniform_low)},
      {"latency.uniform_high", format_double(c.latency.uniform_high)},
      {"latency.perturbation_high", format_double(c.latency.perturbation_high)},
      {"latency.persistence", std::string(to_string(c.latency.persistence))},
      {"aggregation.strategy", std::string(to_string(c.strategy))},
      {"timing.enabled", c.timing_enabled ? "true" : "false"},
      {"timing.k", std::to_string(c.timing_k)},
      {"engine.seed", std::to_string(c.master_seed)},
      {"engine.convergence_window", std::to_string(c.convergence_window)},
      {"engine.task_spacing_epochs", format_double(c.task_spacing_epochs)},
      {"engine.task_phase", std::string(to_string(c.task_phase))},
      {"engine.detection_jitter_s", format_double(c.detection_jitter_s)},
  };
}

}  // namespace oracle_lab
