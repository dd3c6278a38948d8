#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "ratsel/agent.hpp"
#include "ratsel/env_model.hpp"
#include "ratsel/madm.hpp"

namespace ratsel {

struct ExperimentConfig {
  std::size_t epochs = 2000;
  std::uint64_t seed = 42;
  MetricRanges ranges = MetricRanges::defaults();
  /// agent.seed is ignored by run_experiment, which derives it from `seed`.
  AgentConfig agent;
  std::array<double, kMetricCount> madm_weights = madm::default_weights();
  madm::PairwiseMatrix ahp_pairwise = madm::PairwiseMatrix::from_weights(madm::default_weights());
  std::size_t interval_width = 500;
  std::filesystem::path trace_path;    // empty: no trace file
  std::filesystem::path summary_path;  // empty: no summary file

  /// Throws ConfigError (or ValidationError for the AHP matrix).
  void validate() const;
};

/// JSON object; every key is optional and defaults as above. Unknown keys are
/// rejected with a ConfigError naming the key.
///
///   {
///     "epochs": 2000, "seed": 42, "interval_width": 500,
///     "trace": "run.trace.jsonl", "summary": "summary.csv",
///     "ranges": { "5G": { "bandwidth": [50, 500], ... }, ... },
///     "agent": { "epsilon_start": 1.0, "epsilon_min": 0.05, "epsilon_decay": 0.995,
///                "gamma": 0.9, "alpha": 0.001, "batch_size": 32,
///                "memory_capacity": 10000, "target_sync_period": 50,
///                "hidden": [64, 64] },
///     "madm": { "weights": [6 numbers], "ahp_pairwise": [[6 numbers] x 6] }
///   }
///
/// Relative trace/summary paths are kept as written (resolved against the
/// working directory at run time).
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Full config as JSON text; parse_config(config_to_json(c)) reproduces c.
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace ratsel
