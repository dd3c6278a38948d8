#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace ratsel {

/// Candidate radio access technologies. The underlying value is the DQN action index.
enum class RatId : std::uint8_t { FiveG = 0, FourG = 1, WiFi = 2, LeoSat = 3 };

inline constexpr std::size_t kRatCount = 4;
inline constexpr std::array<RatId, kRatCount> kAllRats{RatId::FiveG, RatId::FourG, RatId::WiFi,
                                                       RatId::LeoSat};

constexpr std::size_t index_of(RatId rat) { return static_cast<std::size_t>(rat); }

/// Throws std::out_of_range for indices outside 0..3.
RatId rat_from_index(std::size_t index);

/// "5G", "4G", "WiFi", "LEO".
std::string_view display_name(RatId rat);
std::optional<RatId> rat_from_name(std::string_view name);

/// QoS criteria, in state-vector order.
enum class Metric : std::uint8_t { Bandwidth = 0, Latency, Jitter, PacketLoss, Load, Cost };

inline constexpr std::size_t kMetricCount = 6;
inline constexpr std::array<Metric, kMetricCount> kAllMetrics{
    Metric::Bandwidth, Metric::Latency, Metric::Jitter,
    Metric::PacketLoss, Metric::Load, Metric::Cost};

constexpr std::size_t index_of(Metric metric) { return static_cast<std::size_t>(metric); }

/// Config/trace key: "bandwidth", "latency", "jitter", "packet_loss", "load", "cost".
std::string_view metric_key(Metric metric);
std::optional<Metric> metric_from_key(std::string_view key);

/// One network's QoS snapshot.
///   bandwidth   Mbps
///   latency     ms
///   jitter      ms
///   packet_loss percent, 0..100
///   load        percent, 0..100
///   cost        dollars
struct NetworkMetrics {
  double bandwidth = 0.0;
  double latency = 0.0;
  double jitter = 0.0;
  double packet_loss = 0.0;
  double load = 0.0;
  double cost = 0.0;

  double get(Metric metric) const;
  void set(Metric metric, double value);

  std::array<double, kMetricCount> to_array() const;
  static NetworkMetrics from_array(const std::array<double, kMetricCount>& values);

  /// Finite, non-negative, and percentages no larger than 100.
  bool valid() const;

  bool operator==(const NetworkMetrics&) const = default;
};

}  // namespace ratsel
