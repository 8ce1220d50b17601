#pragma once

#include <string_view>

#include "oracle_lab/rng.hpp"

namespace oracle_lab {

enum class LatencyKind { kGaussian, kUniform };

// Whether the clamped base draw is redrawn on every request, or drawn once per
// (node, source) link and held for the whole campaign with only the
// perturbation varying between tasks.
enum class LatencyPersistence { kPerRequest, kPerLink };

[[nodiscard]] std::string_view to_string(LatencyKind kind);
[[nodiscard]] LatencyKind parse_latency_kind(std::string_view text);
[[nodiscard]] std::string_view to_string(LatencyPersistence persistence);
[[nodiscard]] LatencyPersistence parse_latency_persistence(std::string_view text);

/// Network response duration model:
///   latency = max(0, base) + U(0, perturbation_high)
/// with base ~ N(gaussian_mean, gaussian_std) or U(uniform_low, uniform_high).
struct LatencyModel {
  LatencyKind kind = LatencyKind::kGaussian;
  double gaussian_mean = 0.7;
  double gaussian_std = 0.2887;
  double uniform_low = 0.02;
  double uniform_high = 1.02;
  double perturbation_high = 0.1;
  LatencyPersistence persistence = LatencyPersistence::kPerLink;

  /// Throws ConfigError on a negative std, an empty uniform range or a
  /// negative perturbation bound.
  void validate() const;

  /// E[max(0, base)] + perturbation_high / 2, in closed form.
  [[nodiscard]] double expected_latency() const;
};

/// max(0, base_draw) + perturbation_draw.
[[nodiscard]] inline double compose_latency(double base_draw, double perturbation_draw) {
  return (base_draw > 0.0 ? base_draw : 0.0) + perturbation_draw;
}

/// Raw (unclamped) base draw. Always consumes two draws.
[[nodiscard]] double sample_raw_base(const LatencyModel& model, Rng& rng);

/// U(0, perturbation_high). Always consumes one draw.
[[nodiscard]] double sample_perturbation(const LatencyModel& model, Rng& rng);

/// One full request latency. Always consumes three draws.
[[nodiscard]] double sample_latency(const LatencyModel& model, Rng& rng);

}  // namespace oracle_lab
