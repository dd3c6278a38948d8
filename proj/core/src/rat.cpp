#include "ratsel/rat.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ratsel {

namespace {

constexpr std::array<std::string_view, kRatCount> kRatNames{"5G", "4G", "WiFi", "LEO"};
constexpr std::array<std::string_view, kMetricCount> kMetricKeys{
    "bandwidth", "latency", "jitter", "packet_loss", "load", "cost"};

}  // namespace

RatId rat_from_index(std::size_t index) {
  if (index >= kRatCount) {
    throw std::out_of_range("RAT index out of range: " + std::to_string(index));
  }
  return static_cast<RatId>(index);
}

std::string_view display_name(RatId rat) { return kRatNames[index_of(rat)]; }

std::optional<RatId> rat_from_name(std::string_view name) {
  for (RatId rat : kAllRats) {
    if (kRatNames[index_of(rat)] == name) {
      return rat;
    }
  }
  return std::nullopt;
}

std::string_view metric_key(Metric metric) { return kMetricKeys[index_of(metric)]; }

std::optional<Metric> metric_from_key(std::string_view key) {
  for (Metric metric : kAllMetrics) {
    if (kMetricKeys[index_of(metric)] == key) {
      return metric;
    }
  }
  return std::nullopt;
}

double NetworkMetrics::get(Metric metric) const {
  switch (metric) {
    case Metric::Bandwidth:
      return bandwidth;
    case Metric::Latency:
      return latency;
    case Metric::Jitter:
      return jitter;
    case Metric::PacketLoss:
      return packet_loss;
    case Metric::Load:
      return load;
    case Metric::Cost:
      return cost;
  }
  return 0.0;
}

void NetworkMetrics::set(Metric metric, double value) {
  switch (metric) {
    case Metric::Bandwidth:
      bandwidth = value;
      break;
    case Metric::Latency:
      latency = value;
      break;
    case Metric::Jitter:
      jitter = value;
      break;
    case Metric::PacketLoss:
      packet_loss = value;
      break;
    case Metric::Load:
      load = value;
      break;
    case Metric::Cost:
      cost = value;
      break;
  }
}

std::array<double, kMetricCount> NetworkMetrics::to_array() const {
  return {bandwidth, latency, jitter, packet_loss, load, cost};
}

NetworkMetrics NetworkMetrics::from_array(const std::array<double, kMetricCount>& values) {
  return {values[0], values[1], values[2], values[3], values[4], values[5]};
}

bool NetworkMetrics::valid() const {
  for (double v : to_array()) {
    if (!std::isfinite(v) || v < 0.0) {
      return false;
    }
  }
  return packet_loss <= 100.0 && load <= 100.0;
}

}  // namespace ratsel
