#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "ratsel/agent.hpp"
#include "ratsel/config.hpp"
#include "ratsel/madm.hpp"
#include "ratsel/trace.hpp"

namespace ratsel {

/// Every method's choice on one state, plus the oracle.
struct Selections {
  std::array<RatId, kSelectorCount> choices{};

  RatId operator[](Selector s) const { return choices[index_of(s)]; }
};

/// Choices of the four MADM baselines and the oracle; the DQN slot is left as FiveG.
Selections baseline_selections(const EnvState& state, std::span<const double> madm_weights,
                               const madm::PairwiseMatrix& ahp_pairwise);

/// Epoch-by-epoch driver. All methods see the same sampled state each epoch.
class Experiment {
 public:
  /// Validates `cfg`. The agent seed is derived from cfg.seed.
  explicit Experiment(const ExperimentConfig& cfg);

  /// Samples a state, collects every selection, steps and decays the agent.
  EpochRecord step();

  std::uint64_t epochs_done() const { return epoch_; }
  const DqnAgent& agent() const { return agent_; }
  const ExperimentConfig& config() const { return cfg_; }

 private:
  ExperimentConfig cfg_;
  Rng env_rng_;
  DqnAgent agent_;
  std::uint64_t epoch_ = 0;
};

struct ExperimentResult {
  std::vector<EpochRecord> trace;
  DqnAgent agent;
};

/// Runs cfg.epochs epochs. When cfg.trace_path is set, every record is appended
/// and flushed before the next epoch starts, so a failure leaves a valid
/// partial trace behind.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct PolicyEvaluation {
  std::size_t states = 0;
  double oracle_agreement_pct = 0.0;
  double fiveg_pct = 0.0;
};

/// Scores `agent` on `states` fresh samples without learning, selecting with
/// the given exploration rate.
PolicyEvaluation evaluate_policy(const DqnAgent& agent, const MetricRanges& ranges,
                                 std::size_t states, double epsilon, std::uint64_t seed);

}  // namespace ratsel
