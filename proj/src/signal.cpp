#include "oracle_lab/signal.hpp"

#include <cmath>
#include <string>

#include "oracle_lab/errors.hpp"

namespace oracle_lab {

std::string_view to_string(SignalMode mode) {
  return mode == SignalMode::kShared ? "shared" : "independent";
}

SignalMode parse_signal_mode(std::string_view text) {
  if (text == "shared") return SignalMode::kShared;
  if (text == "independent") return SignalMode::kIndependent;
  throw ConfigError("signal.mode must be 'shared' or 'independent', got '" + std::string(text) +
                    "'");
}

SignalModel::SignalModel(double frequency_hz, std::size_t num_sources)
    : SignalModel(frequency_hz, 0.0, std::vector<double>(num_sources, 0.0), SignalMode::kShared) {}

SignalModel::SignalModel(double frequency_hz, double origin_time, std::vector<double> phase_offsets,
                         SignalMode mode)
    : frequency_hz_(frequency_hz),
      origin_time_(origin_time),
      phase_offsets_(std::move(phase_offsets)),
      mode_(mode) {
  if (!(frequency_hz_ > 0.0) || !std::isfinite(frequency_hz_)) {
    throw ConfigError("signal.frequency_hz must be positive");
  }
  if (phase_offsets_.empty()) throw ConfigError("signal needs at least one source");
  for (double phase : phase_offsets_) {
    if (!(phase >= 0.0) || !(phase < epoch_length())) {
      throw ConfigError("signal.phase_offsets entries must lie in [0, 1/f)");
    }
  }
}

DataValue SignalModel::sample(std::size_t source_index, double time) const {
  if (source_index >= phase_offsets_.size()) {
    throw ConfigError("source index " + std::to_string(source_index) + " out of range");
  }
  const double local = time - origin_time_ - phase_offsets_[source_index];
  if (!(local >= 0.0)) throw DomainError("sample time precedes the source's first interval");

  DataValue value;
  value.epoch_index = static_cast<std::int64_t>(std::floor(local * frequency_hz_));
  value.stream_id =
      mode_ == SignalMode::kShared ? 0U : static_cast<std::uint32_t>(source_index);
  return value;
}

}  // namespace oracle_lab
