#include "ratsel/experiment.hpp"

#include <optional>

#include "ratsel/reward.hpp"

namespace ratsel {

namespace {

constexpr std::uint64_t kEnvStream = 10;
constexpr std::uint64_t kAgentStream = 11;

AgentConfig seeded_agent(const ExperimentConfig& cfg) {
  AgentConfig agent = cfg.agent;
  agent.seed = derive_seed(cfg.seed, kAgentStream);
  return agent;
}

}  // namespace

Selections baseline_selections(const EnvState& state, std::span<const double> madm_weights,
                               const madm::PairwiseMatrix& ahp_pairwise) {
  const madm::DecisionMatrix dm = madm::decision_matrix(state, madm_weights);
  Selections s;
  s.choices[index_of(Selector::Dqn)] = RatId::FiveG;
  s.choices[index_of(Selector::Ahp)] = rat_from_index(madm::ahp_rank(dm, ahp_pairwise).best());
  s.choices[index_of(Selector::Saw)] = rat_from_index(madm::saw(dm).best());
  s.choices[index_of(Selector::Wpm)] = rat_from_index(madm::wpm(dm).best());
  s.choices[index_of(Selector::Topsis)] = rat_from_index(madm::topsis(dm).best());
  s.choices[index_of(Selector::Oracle)] = oracle_best(state);
  return s;
}

Experiment::Experiment(const ExperimentConfig& cfg)
    : cfg_((cfg.validate(), cfg)),
      env_rng_(derive_seed(cfg.seed, kEnvStream)),
      agent_(seeded_agent(cfg)) {}

EpochRecord Experiment::step() {
  const EnvState state = sample_state(cfg_.ranges, env_rng_);
  Selections selections = baseline_selections(state, cfg_.madm_weights, cfg_.ahp_pairwise);
  const StepOutcome outcome = agent_.step_episode(state);
  agent_.end_episode();
  selections.choices[index_of(Selector::Dqn)] = outcome.chosen;

  EpochRecord record;
  record.epoch = ++epoch_;
  record.metrics = state.metrics;
  record.selections = selections.choices;
  record.dqn_reward = outcome.reward;
  record.epsilon = outcome.epsilon;
  return record;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  Experiment experiment(cfg);
  std::optional<TraceWriter> writer;
  if (!cfg.trace_path.empty()) {
    writer.emplace(cfg.trace_path);
  }
  std::vector<EpochRecord> trace;
  trace.reserve(cfg.epochs);
  for (std::size_t e = 0; e < cfg.epochs; ++e) {
    trace.push_back(experiment.step());
    if (writer) {
      writer->append(trace.back());
    }
  }
  return {std::move(trace), experiment.agent()};
}

PolicyEvaluation evaluate_policy(const DqnAgent& agent, const MetricRanges& ranges,
                                 std::size_t states, double epsilon, std::uint64_t seed) {
  Rng env_rng(derive_seed(seed, kEnvStream));
  Rng policy_rng(derive_seed(seed, kAgentStream));
  std::size_t agree = 0;
  std::size_t fiveg = 0;
  for (std::size_t i = 0; i < states; ++i) {
    const EnvState state = sample_state(ranges, env_rng);
    const RatId choice = agent.act(state, epsilon, policy_rng);
    agree += choice == oracle_best(state) ? 1 : 0;
    fiveg += choice == RatId::FiveG ? 1 : 0;
  }
  PolicyEvaluation out;
  out.states = states;
  if (states > 0) {
    out.oracle_agreement_pct = 100.0 * static_cast<double>(agree) / static_cast<double>(states);
    out.fiveg_pct = 100.0 * static_cast<double>(fiveg) / static_cast<double>(states);
  }
  return out;
}

}  // namespace ratsel
