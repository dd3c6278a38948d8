#pragma once

#include <array>

#include "ratsel/env_model.hpp"
#include "ratsel/rat.hpp"

namespace ratsel {

/// Value-dependent criterion weights. Each weight is `base + value / scale`, so
/// the base is also its minimum for non-negative metrics.
struct DynamicWeights {
  double bandwidth = 0.0;
  double latency = 0.0;
  double jitter = 0.0;
  double packet_loss = 0.0;
  double load = 0.0;
  double cost = 0.0;

  bool operator==(const DynamicWeights&) const = default;
};

/// `terms` hold the six non-negative magnitudes in (B, L, J, P, U, C) order;
/// total = terms[0] - terms[1] - terms[2] - terms[3] - terms[4] - terms[5].
struct RewardBreakdown {
  DynamicWeights weights;
  std::array<double, kMetricCount> terms{};
  double total = 0.0;
};

DynamicWeights dynamic_weights(const NetworkMetrics& m);

RewardBreakdown reward_breakdown(const NetworkMetrics& m);

/// Bandwidth is rewarded; latency, jitter, loss, load and cost are penalized,
/// each scaled by its dynamic weight.
double reward(const NetworkMetrics& m);

std::array<double, kRatCount> rewards(const EnvState& state);

/// Argmax of `reward` over the four RATs, lowest index on ties.
RatId oracle_best(const EnvState& state);

}  // namespace ratsel
