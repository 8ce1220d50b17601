#include <doctest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "oracle_lab/analytics.hpp"
#include "oracle_lab/errors.hpp"

using namespace oracle_lab;

namespace {

// P(at least t of n Bernoulli(p)) by summing over every outcome vector.
double enumerate_tail(std::size_t n, std::size_t t, double p) {
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k >= t) {
      total += std::pow(p, static_cast<double>(k)) * std::pow(1.0 - p, static_cast<double>(n - k));
    }
  }
  return total;
}

AnalyticParams params(std::size_t n, std::size_t t, double a, double b, double f) {
  AnalyticParams p;
  p.n_nodes = n;
  p.threshold = t;
  p.low = a;
  p.high = b;
  p.frequency_hz = f;
  return p;
}

}  // namespace

TEST_CASE("analytics: interval hit probability") {
  CHECK(interval_hit_prob(params(21, 11, 0.02, 1.02, 5.0)) == doctest::Approx(0.2));
  CHECK(interval_hit_prob(params(21, 11, 0.0, 0.2, 5.0)) == doctest::Approx(1.0));
  CHECK(interval_hit_prob(params(21, 11, 0.0, 1.0, 10.0)) == doctest::Approx(0.1));
  CHECK(params(21, 11, 0.02, 1.02, 5.0).interval_count() == 5);
}

TEST_CASE("analytics: binomial tail matches enumeration") {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (double p : {0.1, 0.2, 0.5}) {
      for (std::size_t t = 0; t <= n; ++t) {
        CHECK(std::abs(binomial_tail(n, t, p) - enumerate_tail(n, t, p)) <= 1e-12);
      }
    }
  }
  CHECK(binomial_tail(3, 2, 0.5) == doctest::Approx(0.5));
  CHECK(binomial_tail(7, 0, 0.3) == 1.0);
  CHECK(binomial_tail(7, 7, 1.0) == doctest::Approx(1.0));
  CHECK(binomial_tail(7, 8, 0.5) == 0.0);
}

TEST_CASE("analytics: consensus rate closed form") {
  // N=3, t=2, p=0.5 with two intervals: 1 - (1 - 0.5)^2.
  CHECK(consensus_success_rate(params(3, 2, 0.0, 1.0, 2.0)) == doctest::Approx(0.75));
  CHECK(consensus_success_rate(params(5, 3, 0.0, 0.2, 5.0)) == doctest::Approx(1.0));
}

TEST_CASE("analytics: rate is nonincreasing in t") {
  double previous = 2.0;
  for (std::size_t t = 2; t <= 21; ++t) {
    const double r = consensus_success_rate(params(21, t, 0.02, 1.02, 5.0));
    CHECK(r <= previous);
    CHECK(r >= 0.0);
    previous = r;
  }
}

TEST_CASE("analytics: Monte Carlo exposes the exact pigeonhole event") {
  Rng rng(1);
  const auto mc = monte_carlo_rate(params(3, 2, 0.0, 1.0, 2.0), 20000, rng);
  CHECK(mc.rate == 1.0);
  CHECK(mc.trials == 20000);
  const auto single = monte_carlo_rate(params(4, 4, 0.0, 0.2, 5.0), 1000, rng);
  CHECK(single.rate == 1.0);
  const auto impossible = monte_carlo_rate(params(4, 5, 0.0, 1.0, 5.0), 1000, rng);
  CHECK(impossible.rate == 0.0);
}

TEST_CASE("analytics: Monte Carlo agrees with the formula where intervals rarely collide") {
  Rng rng(77);
  const auto p = params(21, 8, 0.0, 1.0, 10.0);
  const double analytic = consensus_success_rate(p);
  const auto mc = monte_carlo_rate(p, 200000, rng);
  const double sigma = std::max(mc.standard_error,
                                std::sqrt(analytic * (1.0 - analytic) / 200000.0));
  CHECK(std::abs(mc.rate - analytic) <= 3.0 * sigma);
}

TEST_CASE("analytics: reference table and validation") {
  CHECK(reference_table().size() == 6);
  CHECK(reference_table().front().published_rate == doctest::Approx(0.9936));
  CHECK_THROWS_AS(params(21, 11, 1.0, 1.0, 5.0).validate(), ConfigError);
  CHECK_THROWS_AS(params(21, 11, 0.0, 1.0, 0.0).validate(), ConfigError);
  CHECK_THROWS_AS(params(21, 11, 0.0, 0.1, 5.0).validate(), ConfigError);
  const auto fit = fit_interval_count(50);
  CHECK(fit.intervals >= 1);
  CHECK(fit.intervals <= 50);
}
