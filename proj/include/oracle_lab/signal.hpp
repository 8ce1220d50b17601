#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

namespace oracle_lab {

enum class SignalMode { kShared, kIndependent };

[[nodiscard]] std::string_view to_string(SignalMode mode);
[[nodiscard]] SignalMode parse_signal_mode(std::string_view text);

/// The value a data source serves at one instant.
///
/// A source's state is constant on each half-open interval of length 1/f, so
/// the interval index identifies the value. Ordering is lexicographic on
/// (stream_id, epoch_index).
struct DataValue {
  std::uint32_t stream_id = 0;
  std::int64_t epoch_index = 0;

  friend auto operator<=>(const DataValue&, const DataValue&) = default;
};

/// Real-time data sources whose state changes `frequency_hz` times a second.
class SignalModel {
 public:
  /// Shared mode, zero origin and zero phase offsets for all sources.
  SignalModel(double frequency_hz, std::size_t num_sources);
  SignalModel(double frequency_hz, double origin_time, std::vector<double> phase_offsets,
              SignalMode mode);

  [[nodiscard]] double frequency_hz() const { return frequency_hz_; }
  [[nodiscard]] double origin_time() const { return origin_time_; }
  [[nodiscard]] const std::vector<double>& phase_offsets() const { return phase_offsets_; }
  [[nodiscard]] SignalMode mode() const { return mode_; }
  [[nodiscard]] std::size_t num_sources() const { return phase_offsets_.size(); }
  [[nodiscard]] double epoch_length() const { return 1.0 / frequency_hz_; }

  /// Value served by `source_index` at `time`. Interval boundaries belong to
  /// the later interval.
  ///
  /// Throws ConfigError for an out-of-range source and DomainError for a time
  /// before the source's first interval.
  [[nodiscard]] DataValue sample(std::size_t source_index, double time) const;

 private:
  double frequency_hz_;
  double origin_time_;
  std::vector<double> phase_offsets_;
  SignalMode mode_;
};

}  // namespace oracle_lab

template <>
struct std::hash<oracle_lab::DataValue> {
  std::size_t operator()(const oracle_lab::DataValue& v) const noexcept {
    return std::hash<std::int64_t>{}(v.epoch_index) ^
           (static_cast<std::size_t>(v.stream_id) * 0x9E3779B97F4A7C15ULL);
  }
};
