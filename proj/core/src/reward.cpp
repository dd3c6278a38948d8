#include "ratsel/reward.hpp"

namespace ratsel {

DynamicWeights dynamic_weights(const NetworkMetrics& m) {
  return {
      .bandwidth = 4.0 + m.bandwidth / 100.0,
      .latency = 4.0 + m.latency / 100.0,
      .jitter = 2.5 + m.jitter / 20.0,
      .packet_loss = 4.0 + m.packet_loss / 5.0,
      .load = 3.0 + m.load / 50.0,
      .cost = 2.0 + m.cost / 10.0,
  };
}

RewardBreakdown reward_breakdown(const NetworkMetrics& m) {
  RewardBreakdown out;
  out.weights = dynamic_weights(m);
  const DynamicWeights& w = out.weights;
  out.terms = {
      w.bandwidth * (m.bandwidth / 100.0),
      w.latency * (m.latency / 300.0),
      w.jitter * (m.jitter / 50.0),
      w.packet_loss * (m.packet_loss / 10.0),
      w.load * (m.load / 100.0),
      w.cost * (m.cost / 10.0),
  };
  out.total = out.terms[0] - out.terms[1] - out.terms[2] - out.terms[3] - out.terms[4] -
              out.terms[5];
  return out;
}

double reward(const NetworkMetrics& m) { return reward_breakdown(m).total; }

std::array<double, kRatCount> rewards(const EnvState& state) {
  std::array<double, kRatCount> out{};
  for (RatId rat : kAllRats) {
    out[index_of(rat)] = reward(state[rat]);
  }
  return out;
}

RatId oracle_best(const EnvState& state) {
  const auto values = rewards(state);
  std::size_t best = 0;
  for (std::size_t i = 1; i < kRatCount; ++i) {
    if (values[i] > values[best]) {
      best = i;
    }
  }
  return rat_from_index(best);
}

}  // namespace ratsel
