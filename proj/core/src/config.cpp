#include "ratsel/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "ratsel/errors.hpp"

namespace ratsel {

namespace {

using nlohmann::ordered_json;

void reject_unknown(const ordered_json& object, const std::set<std::string>& allowed,
                    const std::string& scope) {
  if (!object.is_object()) {
    throw ConfigError(scope + " must be an object");
  }
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown config key: " + scope + "." + key);
    }
  }
}

template <typename T>
T read(const ordered_json& object, const char* key, const std::string& scope) {
  try {
    return object.at(key).get<T>();
  } catch (const ordered_json::exception&) {
    throw ConfigError("config key " + scope + "." + key + " has the wrong type");
  }
}

void apply_ranges(const ordered_json& j, MetricRanges& ranges) {
  std::set<std::string> rat_keys;
  for (RatId rat : kAllRats) rat_keys.emplace(display_name(rat));
  reject_unknown(j, rat_keys, "ranges");
  std::set<std::string> metric_keys;
  for (Metric m : kAllMetrics) metric_keys.emplace(metric_key(m));
  for (const auto& [rat_name, metrics] : j.items()) {
    const RatId rat = *rat_from_name(rat_name);
    const std::string scope = "ranges." + rat_name;
    reject_unknown(metrics, metric_keys, scope);
    for (const auto& [key, bounds] : metrics.items()) {
      if (!bounds.is_array() || bounds.size() != 2 || !bounds[0].is_number() ||
          !bounds[1].is_number()) {
        throw ConfigError("config key " + scope + "." + key + " must be [min, max]");
      }
      ranges.at(rat, *metric_from_key(key)) = {bounds[0].get<double>(), bounds[1].get<double>()};
    }
  }
}

void apply_agent(const ordered_json& j, AgentConfig& agent) {
  const std::string scope = "agent";
  reject_unknown(j,
                 {"epsilon_start", "epsilon_min", "epsilon_decay", "gamma", "alpha", "batch_size",
                  "memory_capacity", "target_sync_period", "hidden"},
                 scope);
  if (j.contains("epsilon_start")) agent.epsilon_start = read<double>(j, "epsilon_start", scope);
  if (j.contains("epsilon_min")) agent.epsilon_min = read<double>(j, "epsilon_min", scope);
  if (j.contains("epsilon_decay")) agent.epsilon_decay = read<double>(j, "epsilon_decay", scope);
  if (j.contains("gamma")) agent.gamma = read<double>(j, "gamma", scope);
  if (j.contains("alpha")) agent.alpha = read<double>(j, "alpha", scope);
  if (j.contains("batch_size")) agent.batch_size = read<std::size_t>(j, "batch_size", scope);
  if (j.contains("memory_capacity")) {
    agent.memory_capacity = read<std::size_t>(j, "memory_capacity", scope);
  }
  if (j.contains("target_sync_period")) {
    agent.target_sync_period = read<std::size_t>(j, "target_sync_period", scope);
  }
  if (j.contains("hidden")) {
    agent.architecture.hidden = read<std::vector<std::size_t>>(j, "hidden", scope);
  }
}

void apply_madm(const ordered_json& j, ExperimentConfig& cfg) {
  reject_unknown(j, {"weights", "ahp_pairwise"}, "madm");
  if (j.contains("weights")) {
    const auto w = read<std::vector<double>>(j, "weights", "madm");
    if (w.size() != kMetricCount) {
      throw ConfigError("madm.weights must have " + std::to_string(kMetricCount) + " entries");
    }
    std::copy(w.begin(), w.end(), cfg.madm_weights.begin());
  }
  if (j.contains("ahp_pairwise")) {
    const auto rows = read<std::vector<std::vector<double>>>(j, "ahp_pairwise", "madm");
    madm::PairwiseMatrix p{rows.size(), {}};
    for (const auto& row : rows) {
      if (row.size() != rows.size()) {
        throw ConfigError("madm.ahp_pairwise must be square");
      }
      p.values.insert(p.values.end(), row.begin(), row.end());
    }
    cfg.ahp_pairwise = std::move(p);
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (epochs < 1) {
    throw ConfigError("epochs must be at least 1");
  }
  if (interval_width < 1) {
    throw ConfigError("interval_width must be at least 1");
  }
  ranges.validate();
  agent.validate();
  double sum = 0.0;
  for (double w : madm_weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ConfigError("madm.weights must be finite and non-negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("madm.weights must sum to 1");
  }
  ahp_pairwise.validate();
  if (ahp_pairwise.size != kMetricCount) {
    throw ConfigError("madm.ahp_pairwise must be " + std::to_string(kMetricCount) + "x" +
                      std::to_string(kMetricCount));
  }
}

ExperimentConfig parse_config(std::string_view json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(j,
                 {"epochs", "seed", "interval_width", "trace", "summary", "ranges", "agent",
                  "madm"},
                 "config");
  ExperimentConfig cfg;
  const std::string scope = "config";
  if (j.contains("epochs")) cfg.epochs = read<std::size_t>(j, "epochs", scope);
  if (j.contains("seed")) cfg.seed = read<std::uint64_t>(j, "seed", scope);
  if (j.contains("interval_width")) {
    cfg.interval_width = read<std::size_t>(j, "interval_width", scope);
  }
  if (j.contains("trace")) cfg.trace_path = read<std::string>(j, "trace", scope);
  if (j.contains("summary")) cfg.summary_path = read<std::string>(j, "summary", scope);
  if (j.contains("ranges")) apply_ranges(j.at("ranges"), cfg.ranges);
  if (j.contains("agent")) apply_agent(j.at("agent"), cfg.agent);
  if (j.contains("madm")) apply_madm(j.at("madm"), cfg);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file: " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  ordered_json ranges = ordered_json::object();
  for (RatId rat : kAllRats) {
    ordered_json metrics = ordered_json::object();
    for (Metric m : kAllMetrics) {
      const Range& r = cfg.ranges.at(rat, m);
      metrics[std::string(metric_key(m))] = {r.min, r.max};
    }
    ranges[std::string(display_name(rat))] = metrics;
  }
  ordered_json pairwise = ordered_json::array();
  for (std::size_t i = 0; i < cfg.ahp_pairwise.size; ++i) {
    std::vector<double> row(cfg.ahp_pairwise.values.begin() + i * cfg.ahp_pairwise.size,
                            cfg.ahp_pairwise.values.begin() + (i + 1) * cfg.ahp_pairwise.size);
    pairwise.push_back(row);
  }
  const AgentConfig& a = cfg.agent;
  ordered_json j = {
      {"epochs", cfg.epochs},
      {"seed", cfg.seed},
      {"interval_width", cfg.interval_width},
      {"trace", cfg.trace_path.string()},
      {"summary", cfg.summary_path.string()},
      {"ranges", ranges},
      {"agent",
       {{"epsilon_start", a.epsilon_start},
        {"epsilon_min", a.epsilon_min},
        {"epsilon_decay", a.epsilon_decay},
        {"gamma", a.gamma},
        {"alpha", a.alpha},
        {"batch_size", a.batch_size},
        {"memory_capacity", a.memory_capacity},
        {"target_sync_period", a.target_sync_period},
        {"hidden", a.architecture.hidden}}},
      {"madm", {{"weights", cfg.madm_weights}, {"ahp_pairwise", pairwise}}},
  };
  return j.dump(2) + "\n";
}

}  // namespace ratsel
