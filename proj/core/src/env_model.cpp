#include "ratsel/env_model.hpp"

#include <cmath>
#include <string>

#include "ratsel/errors.hpp"

namespace ratsel {

MetricRanges MetricRanges::defaults() {
  MetricRanges r;
  auto fill = [&r](RatId rat, Range b, Range l, Range j, Range p, Range u, Range c) {
    r.at(rat, Metric::Bandwidth) = b;
    r.at(rat, Metric::Latency) = l;
    r.at(rat, Metric::Jitter) = j;
    r.at(rat, Metric::PacketLoss) = p;
    r.at(rat, Metric::Load) = u;
    r.at(rat, Metric::Cost) = c;
  };
  fill(RatId::FiveG, {50, 500}, {5, 10}, {1, 5}, {0, 1}, {10, 50}, {3, 6});
  fill(RatId::FourG, {10, 50}, {10, 30}, {5, 15}, {0.1, 2}, {30, 70}, {2, 5});
  fill(RatId::WiFi, {20, 80}, {10, 50}, {1, 8}, {0, 5}, {20, 60}, {1, 4});
  fill(RatId::LeoSat, {50, 200}, {30, 70}, {5, 20}, {2, 10}, {40, 80}, {4, 8});
  return r;
}

MetricRanges MetricRanges::constant(const NetworkMetrics& value) {
  MetricRanges r;
  for (RatId rat : kAllRats) {
    for (Metric m : kAllMetrics) {
      r.at(rat, m) = {value.get(m), value.get(m)};
    }
  }
  return r;
}

void MetricRanges::validate() const {
  for (RatId rat : kAllRats) {
    for (Metric m : kAllMetrics) {
      const Range& range = at(rat, m);
      const std::string where =
          std::string(display_name(rat)) + "." + std::string(metric_key(m));
      if (!std::isfinite(range.min) || !std::isfinite(range.max)) {
        throw ConfigError("range " + where + " has a non-finite bound");
      }
      if (range.min < 0.0) {
        throw ConfigError("range " + where + " has a negative lower bound");
      }
      if (range.min > range.max) {
        throw ConfigError("range " + where + " has min > max");
      }
      if ((m == Metric::PacketLoss || m == Metric::Load) && range.max > 100.0) {
        throw ConfigError("range " + where + " exceeds 100 percent");
      }
    }
  }
}

StateVector normalize(const MetricsByRat& metrics) {
  StateVector out{};
  for (std::size_t r = 0; r < kRatCount; ++r) {
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      out[r * kMetricCount + m] = metrics[r].get(kAllMetrics[m]) / kNormalizers[m];
    }
  }
  return out;
}

EnvState EnvState::from_metrics(const MetricsByRat& metrics) {
  return {metrics, normalize(metrics)};
}

EnvState sample_state(const MetricRanges& ranges, Rng& rng) {
  ranges.validate();
  MetricsByRat metrics{};
  for (RatId rat : kAllRats) {
    for (Metric m : kAllMetrics) {
      const Range& range = ranges.at(rat, m);
      metrics[index_of(rat)].set(m, rng.uniform(range.min, range.max));
    }
  }
  return EnvState::from_metrics(metrics);
}

}  // namespace ratsel
