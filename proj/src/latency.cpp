#include "oracle_lab/latency.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "oracle_lab/errors.hpp"

namespace oracle_lab {

std::string_view to_string(LatencyKind kind) {
  return kind == LatencyKind::kGaussian ? "gaussian" : "uniform";
}

LatencyKind parse_latency_kind(std::string_view text) {
  if (text == "gaussian") return LatencyKind::kGaussian;
  if (text == "uniform") return LatencyKind::kUniform;
  throw ConfigError("latency.kind must be 'gaussian' or 'uniform', got '" + std::string(text) +
                    "'");
}

std::string_view to_string(LatencyPersistence persistence) {
  return persistence == LatencyPersistence::kPerLink ? "per_link" : "per_request";
}

LatencyPersistence parse_latency_persistence(std::string_view text) {
  if (text == "per_link") return LatencyPersistence::kPerLink;
  if (text == "per_request") return LatencyPersistence::kPerRequest;
  throw ConfigError("latency.persistence must be 'per_link' or 'per_request', got '" +
                    std::string(text) + "'");
}

void LatencyModel::validate() const {
  // A zero std is accepted: it is the degenerate model used by homogeneity checks.
  if (!(gaussian_std >= 0.0) || !std::isfinite(gaussian_mean)) {
    throw ConfigError("latency.gaussian_std must be >= 0 and the mean finite");
  }
  if (!(uniform_low < uniform_high)) {
    throw ConfigError("latency.uniform_low must be below latency.uniform_high");
  }
  if (!(perturbation_high >= 0.0)) throw ConfigError("latency.perturbation_high must be >= 0");
}

double LatencyModel::expected_latency() const {
  double base = 0.0;
  if (kind == LatencyKind::kGaussian) {
    if (gaussian_std == 0.0) {
      base = std::max(0.0, gaussian_mean);
    } else {
      // E[max(0, X)] = mu * Phi(mu / sigma) + sigma * phi(mu / sigma)
      const double z = gaussian_mean / gaussian_std;
      const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
      const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
      base = gaussian_mean * cdf + gaussian_std * pdf;
    }
  } else {
    const double lo = std::max(0.0, uniform_low);
    const double hi = std::max(0.0, uniform_high);
    // Mass below zero collapses onto zero.
    base = (hi * hi - lo * lo) / (2.0 * (uniform_high - uniform_low));
  }
  return base + perturbation_high / 2.0;
}

double sample_raw_base(const LatencyModel& model, Rng& rng) {
  if (model.kind == LatencyKind::kGaussian) {
    return model.gaussian_mean + model.gaussian_std * rng.standard_normal();
  }
  const double draw = rng.uniform(model.uniform_low, model.uniform_high);
  (void)rng();  // keep the draw count equal to the Gaussian branch
  return draw;
}

double sample_perturbation(const LatencyModel& model, Rng& rng) {
  return rng.uniform(0.0, model.perturbation_high);
}

double sample_latency(const LatencyModel& model, Rng& rng) {
  const double base = sample_raw_base(model, rng);
  return compose_latency(base, sample_perturbation(model, rng));
}

}  // namespace oracle_lab
