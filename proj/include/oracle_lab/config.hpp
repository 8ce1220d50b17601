#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oracle_lab/engine.hpp"

namespace oracle_lab {

struct ExportOptions {
  bool write_timing = true;
  bool dump_beliefs = false;
  bool dump_waits = false;
};

struct RunConfig {
  SimConfig sim;
  ExportOptions output;
  /// True once engine.seed was set by a file or override.
  bool seed_explicit = false;
};

using KeyValue = std::pair<std::string, std::string>;

/// Parses a flat `key = value` document. Blank lines and `#` comments are
/// skipped. Throws ConfigError with the line number on malformed lines and
/// duplicate keys.
[[nodiscard]] std::vector<KeyValue> parse_key_values(std::string_view text);

/// Sets one configuration key. Throws ConfigError on unknown keys and
/// unparsable values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Applies every entry of a parsed document on top of the defaults.
[[nodiscard]] RunConfig config_from_key_values(const std::vector<KeyValue>& entries);

/// Reads and parses a config file. Throws IoError if it cannot be read.
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// Every simulation key with its canonical value, in a fixed order. Feeding
/// the result back through config_from_key_values reproduces `config`.
[[nodiscard]] std::vector<KeyValue> config_echo(const SimConfig& config);

/// Canonical text for a double: shortest representation that round-trips.
[[nodiscard]] std::string format_double(double value);

}  // namespace oracle_lab
