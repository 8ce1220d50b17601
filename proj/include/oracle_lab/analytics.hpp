#pragma once

#include <cstddef>
#include <vector>

#include "oracle_lab/rng.hpp"

namespace oracle_lab {

/// Closed-form consensus model for N nodes whose response times are i.i.d.
/// U(low, high), against a source that changes frequency_hz times a second.
struct AnalyticParams {
  std::size_t n_nodes = 21;
  std::size_t threshold = 11;
  double low = 0.02;
  double high = 1.02;
  double frequency_hz = 5.0;

  /// Throws ConfigError unless high > low, f > 0 and (high - low) * f >= 1.
  void validate() const;
  /// (high - low) * f rounded to the nearest integer.
  [[nodiscard]] std::size_t interval_count() const;
};

/// p = 1 / (f (b - a)): chance that one node lands in a given interval.
[[nodiscard]] double interval_hit_prob(const AnalyticParams& params);

/// P(Binomial(n, p) >= t), summed in log space.
[[nodiscard]] double binomial_tail(std::size_t n, std::size_t t, double p);

/// binomial_tail at the params' N, t and p.
[[nodiscard]] double at_least_t_prob(const AnalyticParams& params);

/// 1 - (1 - P(at least t in one interval))^intervals. Treats the intervals as
/// independent, which overestimates failure when t is small.
[[nodiscard]] double consensus_success_rate(const AnalyticParams& params);

struct MonteCarloEstimate {
  double rate = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
};

/// Simulates N uniform response times per trial and checks whether some
/// interval holds at least t of them. t may exceed N here (rate 0).
[[nodiscard]] MonteCarloEstimate monte_carlo_rate(const AnalyticParams& params, std::size_t trials,
                                                  Rng& rng);

/// Published theoretical rates for comparison output.
struct ReferenceRow {
  std::size_t n_nodes;
  std::size_t threshold;
  double published_rate;  // fraction, not percent
};

[[nodiscard]] const std::vector<ReferenceRow>& reference_table();

/// Integer interval count (p = 1/count) minimizing the summed squared log
/// error against the reference rows, searched over [1, max_intervals].
struct IntervalFit {
  std::size_t intervals = 0;
  double log_error = 0.0;
};

[[nodiscard]] IntervalFit fit_interval_count(std::size_t max_intervals);

}  // namespace oracle_lab
