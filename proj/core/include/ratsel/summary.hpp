#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ratsel/trace.hpp"

namespace ratsel {

/// Selection statistics over a contiguous run of epochs. Percentages are
/// computed once from integer counts.
struct IntervalSummary {
  std::string label;  // "first-last", inclusive epoch numbers
  std::uint64_t first_epoch = 0;
  std::uint64_t last_epoch = 0;
  std::size_t epochs = 0;
  std::array<double, kMethodCount> fiveg_pct{};           // indexed by Selector
  std::array<double, kMethodCount> oracle_agreement_pct{};  // indexed by Selector

  double fiveg(Selector s) const { return fiveg_pct[index_of(s)]; }
  double agreement(Selector s) const { return oracle_agreement_pct[index_of(s)]; }

  bool operator==(const IntervalSummary&) const = default;
};

/// Statistics over all of `trace`.
IntervalSummary summarize_range(std::span<const EpochRecord> trace);

/// Rows, in order:
///   - consecutive blocks of `interval_width` records (the last may be shorter);
///   - a tail row over the final 100 records, when there are at least two blocks
///     and more than 100 records, unless the last block already covers exactly them;
///   - an all-epochs row.
/// Throws ValidationError for an empty trace or zero width.
std::vector<IntervalSummary> summarize(std::span<const EpochRecord> trace,
                                       std::size_t interval_width);

enum class ExportFormat { Csv, Jsonl };

/// "csv" or "jsonl"; throws ConfigError otherwise.
ExportFormat parse_export_format(std::string_view name);

/// CSV header:
///   interval,dqn,ahp,saw,wpm,topsis,dqn_oracle,ahp_oracle,saw_oracle,wpm_oracle,topsis_oracle,epochs
/// The first six columns are the 5G-selection percentages. JSONL has one object
/// per row with the same keys. Numbers are shortest round-trip decimal.
std::string format_summaries(std::span<const IntervalSummary> rows, ExportFormat format);
std::vector<IntervalSummary> parse_summaries(std::string_view text, ExportFormat format);

/// Throws IoError naming `path` when it cannot be written.
void export_summaries(std::span<const IntervalSummary> rows, ExportFormat format,
                      const std::filesystem::path& path);
std::vector<IntervalSummary> read_summaries(const std::filesystem::path& path,
                                            ExportFormat format);

struct AgreementReport {
  /// Consecutive intervals plus the all-epochs row, as in summarize().
  std::vector<IntervalSummary> rows;
  std::string headline_label;      // final consecutive interval
  double headline_dqn_agreement = 0.0;
};

/// How often each method matched the reward oracle. The DQN's agreement over
/// the final interval is the headline figure.
AgreementReport oracle_check(std::span<const EpochRecord> trace, std::size_t interval_width);

/// Plain-text matrix of 5G-selection percentages, one row per interval and one
/// column per method.
std::string format_comparison(std::span<const IntervalSummary> rows);

std::string format_agreement(const AgreementReport& report);

}  // namespace ratsel
