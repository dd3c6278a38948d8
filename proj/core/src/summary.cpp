#include "ratsel/summary.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ratsel/errors.hpp"
#include "ratsel/format.hpp"

namespace ratsel {

namespace {

using nlohmann::ordered_json;

constexpr std::size_t kTailEpochs = 100;

std::string range_label(std::uint64_t first, std::uint64_t last) {
  return std::to_string(first) + "-" + std::to_string(last);
}

double percent(std::size_t count, std::size_t total) {
  return 100.0 * static_cast<double>(count) / static_cast<double>(total);
}

std::vector<std::string> csv_columns() {
  std::vector<std::string> cols{"interval"};
  for (Selector s : kMethods) cols.emplace_back(selector_name(s));
  for (Selector s : kMethods) cols.push_back(std::string(selector_name(s)) + "_oracle");
  cols.emplace_back("epochs");
  return cols;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Restores first/last epoch from a "first-last" label.
void apply_label(IntervalSummary& row) {
  const auto parts = split(row.label, '-');
  if (parts.size() != 2) {
    throw ValidationError("summary: bad interval label '" + row.label + "'");
  }
  try {
    row.first_epoch = std::stoull(parts[0]);
    row.last_epoch = std::stoull(parts[1]);
  } catch (const std::exception&) {
    throw ValidationError("summary: bad interval label '" + row.label + "'");
  }
}

}  // namespace

IntervalSummary summarize_range(std::span<const EpochRecord> trace) {
  if (trace.empty()) {
    throw ValidationError("cannot summarize an empty trace");
  }
  std::array<std::size_t, kMethodCount> fiveg{};
  std::array<std::size_t, kMethodCount> agree{};
  for (const EpochRecord& r : trace) {
    for (Selector s : kMethods) {
      fiveg[index_of(s)] += r.selection(s) == RatId::FiveG ? 1 : 0;
      agree[index_of(s)] += r.selection(s) == r.oracle_choice() ? 1 : 0;
    }
  }
  IntervalSummary row;
  row.first_epoch = trace.front().epoch;
  row.last_epoch = trace.back().epoch;
  row.label = range_label(row.first_epoch, row.last_epoch);
  row.epochs = trace.size();
  for (std::size_t m = 0; m < kMethodCount; ++m) {
    row.fiveg_pct[m] = percent(fiveg[m], trace.size());
    row.oracle_agreement_pct[m] = percent(agree[m], trace.size());
  }
  return row;
}

std::vector<IntervalSummary> summarize(std::span<const EpochRecord> trace,
                                       std::size_t interval_width) {
  if (trace.empty()) {
    throw ValidationError("cannot summarize an empty trace");
  }
  if (interval_width == 0) {
    throw ValidationError("interval width must be at least 1");
  }
  std::vector<IntervalSummary> rows;
  for (std::size_t start = 0; start < trace.size(); start += interval_width) {
    const std::size_t count = std::min(interval_width, trace.size() - start);
    rows.push_back(summarize_range(trace.subspan(start, count)));
  }
  if (rows.size() >= 2 && trace.size() > kTailEpochs && rows.back().epochs != kTailEpochs) {
    rows.push_back(summarize_range(trace.last(kTailEpochs)));
  }
  rows.push_back(summarize_range(trace));
  return rows;
}

ExportFormat parse_export_format(std::string_view name) {
  if (name == "csv") return ExportFormat::Csv;
  if (name == "jsonl") return ExportFormat::Jsonl;
  throw ConfigError("unknown export format '" + std::string(name) + "' (expected csv or jsonl)");
}

std::string format_summaries(std::span<const IntervalSummary> rows, ExportFormat format) {
  const auto cols = csv_columns();
  std::string out;
  if (format == ExportFormat::Csv) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out += (c ? "," : "") + cols[c];
    }
    out += '\n';
    for (const IntervalSummary& row : rows) {
      out += row.label;
      for (double v : row.fiveg_pct) out += "," + format_double(v);
      for (double v : row.oracle_agreement_pct) out += "," + format_double(v);
      out += "," + std::to_string(row.epochs) + "\n";
    }
    return out;
  }
  for (const IntervalSummary& row : rows) {
    ordered_json j;
    j["interval"] = row.label;
    for (std::size_t m = 0; m < kMethodCount; ++m) j[cols[1 + m]] = row.fiveg_pct[m];
    for (std::size_t m = 0; m < kMethodCount; ++m) {
      j[cols[1 + kMethodCount + m]] = row.oracle_agreement_pct[m];
    }
    j["epochs"] = row.epochs;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<IntervalSummary> parse_summaries(std::string_view text, ExportFormat format) {
  const auto cols = csv_columns();
  std::vector<IntervalSummary> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (format == ExportFormat::Csv) {
    if (!std::getline(in, line) || split(line, ',') != cols) {
      throw ValidationError("summary CSV: unexpected header");
    }
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    IntervalSummary row;
    if (format == ExportFormat::Csv) {
      const auto fields = split(line, ',');
      if (fields.size() != cols.size()) {
        throw ValidationError("summary CSV: expected " + std::to_string(cols.size()) +
                              " fields, got " + std::to_string(fields.size()));
      }
      row.label = fields[0];
      for (std::size_t m = 0; m < kMethodCount; ++m) {
        row.fiveg_pct[m] = parse_double(fields[1 + m]);
        row.oracle_agreement_pct[m] = parse_double(fields[1 + kMethodCount + m]);
      }
      row.epochs = static_cast<std::size_t>(parse_double(fields.back()));
    } else {
      try {
        const ordered_json j = ordered_json::parse(line);
        row.label = j.at("interval").get<std::string>();
        for (std::size_t m = 0; m < kMethodCount; ++m) {
          row.fiveg_pct[m] = j.at(cols[1 + m]).get<double>();
          row.oracle_agreement_pct[m] = j.at(cols[1 + kMethodCount + m]).get<double>();
        }
        row.epochs = j.at("epochs").get<std::size_t>();
      } catch (const ordered_json::exception& e) {
        throw ValidationError(std::string("summary JSONL: ") + e.what());
      }
    }
    apply_label(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

void export_summaries(std::span<const IntervalSummary> rows, ExportFormat format,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write summary file: " + path.string());
  }
  out << format_summaries(rows, format);
  out.flush();
  if (!out) {
    throw IoError("failed writing summary file: " + path.string());
  }
}

std::vector<IntervalSummary> read_summaries(const std::filesystem::path& path,
                                            ExportFormat format) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open summary file: " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_summaries(text.str(), format);
}

AgreementReport oracle_check(std::span<const EpochRecord> trace, std::size_t interval_width) {
  if (trace.empty()) {
    throw ValidationError("cannot check an empty trace");
  }
  if (interval_width == 0) {
    throw ValidationError("interval width must be at least 1");
  }
  AgreementReport report;
  for (std::size_t start = 0; start < trace.size(); start += interval_width) {
    const std::size_t count = std::min(interval_width, trace.size() - start);
    report.rows.push_back(summarize_range(trace.subspan(start, count)));
  }
  report.headline_label = report.rows.back().label;
  report.headline_dqn_agreement = report.rows.back().agreement(Selector::Dqn);
  report.rows.push_back(summarize_range(trace));
  return report;
}

namespace {

std::string table(std::span<const IntervalSummary> rows, bool agreement) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-12s", "epochs");
  out += buf;
  for (Selector s : kMethods) {
    std::snprintf(buf, sizeof buf, " %8s", std::string(selector_name(s)).c_str());
    out += buf;
  }
  out += '\n';
  for (const IntervalSummary& row : rows) {
    std::snprintf(buf, sizeof buf, "%-12s", row.label.c_str());
    out += buf;
    for (Selector s : kMethods) {
      std::snprintf(buf, sizeof buf, " %8.2f", agreement ? row.agreement(s) : row.fiveg(s));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string format_comparison(std::span<const IntervalSummary> rows) {
  return "5G selection (%)\n" + table(rows, false);
}

std::string format_agreement(const AgreementReport& report) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "DQN oracle agreement over %s: %.2f%%\n",
                report.headline_label.c_str(), report.headline_dqn_agreement);
  return "Oracle agreement (%)\n" + table(report.rows, true) + buf;
}

}  // namespace ratsel
