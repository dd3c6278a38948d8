#include "ratsel/trace.hpp"

#include <json.hpp>

#include "ratsel/errors.hpp"
#include "ratsel/format.hpp"

namespace ratsel {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, kSelectorCount> kSelectorNames{"dqn", "ahp", "saw",
                                                                      "wpm", "topsis", "oracle"};

std::string quoted(std::string_view s) { return "\"" + std::string(s) + "\""; }

RatId parse_rat(const json& value, std::string_view field) {
  if (!value.is_string()) {
    throw ValidationError("trace: selection '" + std::string(field) + "' must be a RAT name");
  }
  const auto rat = rat_from_name(value.get<std::string>());
  if (!rat) {
    throw ValidationError("trace: unknown RAT '" + value.get<std::string>() + "'");
  }
  return *rat;
}

}  // namespace

std::string_view selector_name(Selector s) { return kSelectorNames[index_of(s)]; }

std::string format_record(const EpochRecord& record) {
  std::string line = "{\"epoch\":" + std::to_string(record.epoch) + ",\"metrics\":{";
  for (RatId rat : kAllRats) {
    if (rat != RatId::FiveG) line += ',';
    line += quoted(display_name(rat)) + ":[";
    const auto values = record.metrics[index_of(rat)].to_array();
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      if (m != 0) line += ',';
      line += format_double(values[m]);
    }
    line += ']';
  }
  line += "},\"selections\":{";
  for (Selector s : kSelectors) {
    if (s != Selector::Dqn) line += ',';
    line += quoted(selector_name(s)) + ":" + quoted(display_name(record.selection(s)));
  }
  line += "},\"dqn_reward\":" + format_double(record.dqn_reward) +
          ",\"epsilon\":" + format_double(record.epsilon) + "}";
  return line;
}

EpochRecord parse_record(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("trace: malformed line: ") + e.what());
  }
  try {
    EpochRecord r;
    if (j.size() != 5) {
      throw ValidationError("trace: record must have exactly 5 fields");
    }
    r.epoch = j.at("epoch").get<std::uint64_t>();
    const json& metrics = j.at("metrics");
    if (metrics.size() != kRatCount) {
      throw ValidationError("trace: metrics must list all four RATs");
    }
    for (RatId rat : kAllRats) {
      const auto values =
          metrics.at(std::string(display_name(rat))).get<std::array<double, kMetricCount>>();
      r.metrics[index_of(rat)] = NetworkMetrics::from_array(values);
    }
    const json& selections = j.at("selections");
    if (selections.size() != kSelectorCount) {
      throw ValidationError("trace: selections must list all methods and the oracle");
    }
    for (Selector s : kSelectors) {
      const std::string key(selector_name(s));
      r.selections[index_of(s)] = parse_rat(selections.at(key), key);
    }
    r.dqn_reward = j.at("dqn_reward").get<double>();
    r.epsilon = j.at("epsilon").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("trace: bad record: ") + e.what());
  }
}

TraceWriter::TraceWriter(const std::filesystem::path& path) : path_(path), out_(path) {
  if (!out_) {
    throw IoError("cannot open trace file for writing: " + path.string());
  }
}

void TraceWriter::append(const EpochRecord& record) {
  out_ << format_record(record) << '\n';
  out_.flush();
  if (!out_) {
    throw IoError("failed writing trace file: " + path_.string());
  }
}

std::vector<EpochRecord> read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open trace file: " + path.string());
  }
  std::vector<EpochRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      records.push_back(parse_record(line));
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (records.size() > 1 && records.back().epoch <= records[records.size() - 2].epoch) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": epochs must be strictly increasing");
    }
  }
  return records;
}

}  // namespace ratsel
