#pragma once

#include <array>
#include <cstddef>

#include "ratsel/random.hpp"
#include "ratsel/rat.hpp"

namespace ratsel {

inline constexpr std::size_t kStateSize = kRatCount * kMetricCount;

using StateVector = std::array<double, kStateSize>;
using MetricsByRat = std::array<NetworkMetrics, kRatCount>;

/// Closed sampling interval for one metric of one RAT.
struct Range {
  double min = 0.0;
  double max = 0.0;

  bool operator==(const Range&) const = default;
};

/// Per-RAT, per-metric sampling bounds.
class MetricRanges {
 public:
  /// The published network characteristics (5G / 4G / WiFi / LEO).
  static MetricRanges defaults();

  /// Every bound set to `value`; mainly for tests.
  static MetricRanges constant(const NetworkMetrics& value);

  const Range& at(RatId rat, Metric metric) const {
    return bounds_[index_of(rat)][index_of(metric)];
  }
  Range& at(RatId rat, Metric metric) { return bounds_[index_of(rat)][index_of(metric)]; }

  /// Throws ConfigError naming the offending RAT/metric when a bound is
  /// non-finite, negative, above 100 for a percentage, or min > max.
  void validate() const;

  bool operator==(const MetricRanges&) const = default;

 private:
  std::array<std::array<Range, kMetricCount>, kRatCount> bounds_{};
};

/// Per-metric divisor mapping raw values onto roughly [0, 1]: the largest
/// default upper bound of that metric across all RATs.
inline constexpr std::array<double, kMetricCount> kNormalizers{500.0, 70.0, 20.0, 10.0, 80.0, 8.0};

/// RAT-major, metric-minor flattening of `metrics`, each entry divided by its normalizer.
StateVector normalize(const MetricsByRat& metrics);

/// One epoch's environment.
struct EnvState {
  MetricsByRat metrics{};
  StateVector normalized{};

  static EnvState from_metrics(const MetricsByRat& metrics);

  const NetworkMetrics& operator[](RatId rat) const { return metrics[index_of(rat)]; }

  bool operator==(const EnvState&) const = default;
};

/// Draws every metric of every RAT independently and uniformly from its range.
/// Draw order is RAT-major, metric-minor.
EnvState sample_state(const MetricRanges& ranges, Rng& rng);

}  // namespace ratsel
