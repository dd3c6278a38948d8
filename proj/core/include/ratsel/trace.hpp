#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "ratsel/env_model.hpp"
#include "ratsel/rat.hpp"

namespace ratsel {

/// The five competing methods followed by the reward oracle.
enum class Selector : std::uint8_t { Dqn = 0, Ahp, Saw, Wpm, Topsis, Oracle };

inline constexpr std::size_t kMethodCount = 5;
inline constexpr std::size_t kSelectorCount = 6;
inline constexpr std::array<Selector, kMethodCount> kMethods{
    Selector::Dqn, Selector::Ahp, Selector::Saw, Selector::Wpm, Selector::Topsis};
inline constexpr std::array<Selector, kSelectorCount> kSelectors{
    Selector::Dqn, Selector::Ahp, Selector::Saw, Selector::Wpm, Selector::Topsis,
    Selector::Oracle};

constexpr std::size_t index_of(Selector s) { return static_cast<std::size_t>(s); }

/// "dqn", "ahp", "saw", "wpm", "topsis", "oracle".
std::string_view selector_name(Selector s);

struct EpochRecord {
  std::uint64_t epoch = 0;
  MetricsByRat metrics{};
  std::array<RatId, kSelectorCount> selections{};
  double dqn_reward = 0.0;
  double epsilon = 0.0;  // exploration rate the DQN selected with

  RatId selection(Selector s) const { return selections[index_of(s)]; }
  RatId oracle_choice() const { return selection(Selector::Oracle); }

  bool operator==(const EpochRecord&) const = default;
};

/// One JSON object per line, keys in this order:
///
///   {"epoch":1,
///    "metrics":{"5G":[B,L,J,P,U,C],"4G":[...],"WiFi":[...],"LEO":[...]},
///    "selections":{"dqn":"WiFi","ahp":"5G","saw":"5G","wpm":"5G","topsis":"5G","oracle":"5G"},
///    "dqn_reward":-1.25,"epsilon":1.0}
///
/// Numbers are written in shortest round-trip form, so parsing a line yields
/// the exact record.
std::string format_record(const EpochRecord& record);

/// Throws ValidationError on malformed lines.
EpochRecord parse_record(std::string_view line);

/// Truncates `path` and appends one flushed line per record.
class TraceWriter {
 public:
  explicit TraceWriter(const std::filesystem::path& path);

  /// Throws IoError (with the path) if the write fails.
  void append(const EpochRecord& record);

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

/// Reads a complete or partial trace; epochs must be strictly increasing.
std::vector<EpochRecord> read_trace(const std::filesystem::path& path);

}  // namespace ratsel
