#include "oracle_lab/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oracle_lab/errors.hpp"

namespace oracle_lab {

void AnalyticParams::validate() const {
  if (!(high > low)) throw ConfigError("analytic: need b > a");
  if (!(frequency_hz > 0.0)) throw ConfigError("analytic: need f > 0");
  if (!((high - low) * frequency_hz >= 1.0)) {
    throw ConfigError("analytic: need at least one interval, (b - a) * f >= 1");
  }
  if (n_nodes < 1) throw ConfigError("analytic: need N >= 1");
}

std::size_t AnalyticParams::interval_count() const {
  return static_cast<std::size_t>(std::max(1.0, std::round((high - low) * frequency_hz)));
}

double interval_hit_prob(const AnalyticParams& params) {
  params.validate();
  return 1.0 / (params.frequency_hz * (params.high - params.low));
}

double binomial_tail(std::size_t n, std::size_t t, double p) {
  if (t == 0) return 1.0;
  if (t > n) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;

  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
  double sum = 0.0;
  for (std::size_t k = t; k <= n; ++k) {
    const auto kd = static_cast<double>(k);
    const auto rest = static_cast<double>(n - k);
    const double log_term = log_n_fact - std::lgamma(kd + 1.0) - std::lgamma(rest + 1.0) +
                            kd * log_p + rest * log_q;
    sum += std::exp(log_term);
  }
  return std::min(sum, 1.0);
}

double at_least_t_prob(const AnalyticParams& params) {
  return binomial_tail(params.n_nodes, params.threshold, interval_hit_prob(params));
}

double consensus_success_rate(const AnalyticParams& params) {
  const double tail = at_least_t_prob(params);
  if (tail >= 1.0) return 1.0;
  const auto intervals = static_cast<double>(params.interval_count());
  // 1 - (1 - tail)^I without cancellation for tiny tails.
  return -std::expm1(intervals * std::log1p(-tail));
}

MonteCarloEstimate monte_carlo_rate(const AnalyticParams& params, std::size_t trials, Rng& rng) {
  params.validate();
  if (trials < 1) throw ConfigError("monte_carlo_rate: need at least one trial");
  const auto bins =
      static_cast<std::size_t>(std::ceil((params.high - params.low) * params.frequency_hz - 1e-12));
  std::vector<std::size_t> counts(std::max<std::size_t>(bins, 1));

  std::size_t hits = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::fill(counts.begin(), counts.end(), 0);
    bool success = false;
    for (std::size_t node = 0; node < params.n_nodes; ++node) {
      const double x = rng.uniform(params.low, params.high);
      auto bin = static_cast<std::size_t>(std::floor((x - params.low) * params.frequency_hz));
      bin = std::min(bin, counts.size() - 1);
      if (++counts[bin] >= params.threshold) success = true;
    }
    hits += success ? 1 : 0;
  }

  MonteCarloEstimate estimate;
  estimate.trials = trials;
  estimate.rate = static_cast<double>(hits) / static_cast<double>(trials);
  estimate.standard_error =
      std::sqrt(estimate.rate * (1.0 - estimate.rate) / static_cast<double>(trials));
  return estimate;
}

const std::vector<ReferenceRow>& reference_table() {
  static const std::vector<ReferenceRow> rows = {
      {11, 2, 0.9936},  {11, 4, 0.4526},    {11, 6, 0.0273},
      {21, 11, 0.0011}, {50, 26, 6.51e-8}, {100, 51, 1.99e-14},
  };
  return rows;
}

IntervalFit fit_interval_count(std::size_t max_intervals) {
  IntervalFit best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t intervals = 1; intervals <= max_intervals; ++intervals) {
    double error = 0.0;
    for (const auto& row : reference_table()) {
      AnalyticParams params{row.n_nodes, row.threshold, 0.0, 1.0,
                            static_cast<double>(intervals)};
      const double rate = std::max(consensus_success_rate(params), 1e-300);
      const double diff = std::log(rate) - std::log(row.published_rate);
      error += diff * diff;
    }
    if (error < best.log_error) best = {intervals, error};
  }
  return best;
}

}  // namespace oracle_lab
