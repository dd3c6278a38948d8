#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ratsel/errors.hpp"
#include "ratsel/experiment.hpp"
#include "ratsel/reward.hpp"
#include "ratsel/summary.hpp"

using namespace ratsel;

namespace {

ExperimentConfig quick(std::size_t epochs, std::uint64_t seed = 42) {
  ExperimentConfig cfg;
  cfg.epochs = epochs;
  cfg.seed = seed;
  return cfg;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("one epoch produces one complete record") {
  const ExperimentResult r = run_experiment(quick(1));
  REQUIRE(r.trace.size() == 1);
  const EpochRecord& rec = r.trace.front();
  CHECK(rec.epoch == 1);
  CHECK(rec.epsilon == 1.0);
  CHECK(rec.selections.size() == 6);
  const EnvState state = EnvState::from_metrics(rec.metrics);
  CHECK(rec.oracle_choice() == oracle_best(state));
  CHECK(rec.dqn_reward == reward(state[rec.selection(Selector::Dqn)]));
  CHECK(r.agent.episodes() == 1);
}

TEST_CASE("every method sees the same state") {
  const ExperimentConfig cfg = quick(300, 5);
  const ExperimentResult r = run_experiment(cfg);
  for (const EpochRecord& rec : r.trace) {
    const EnvState state = EnvState::from_metrics(rec.metrics);
    const Selections expected = baseline_selections(state, cfg.madm_weights, cfg.ahp_pairwise);
    for (Selector s : {Selector::Ahp, Selector::Saw, Selector::Wpm, Selector::Topsis,
                       Selector::Oracle}) {
      REQUIRE(rec.selection(s) == expected[s]);
    }
    REQUIRE(rec.dqn_reward == reward(state[rec.selection(Selector::Dqn)]));
  }
}

TEST_CASE("epochs increase and epsilon decays along the trace") {
  const ExperimentResult r = run_experiment(quick(700));
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    REQUIRE(r.trace[i].epoch == r.trace[i - 1].epoch + 1);
    REQUIRE(r.trace[i].epsilon <= r.trace[i - 1].epsilon);
  }
  CHECK(r.trace[1].epsilon == 0.995);
  CHECK(r.trace.back().epsilon <= 0.05);
}

TEST_CASE("same config and seed give byte-identical trace files") {
  const auto dir = std::filesystem::temp_directory_path();
  ExperimentConfig cfg = quick(400, 77);
  cfg.trace_path = dir / "ratsel_det_a.jsonl";
  run_experiment(cfg);
  cfg.trace_path = dir / "ratsel_det_b.jsonl";
  run_experiment(cfg);
  const std::string a = slurp(dir / "ratsel_det_a.jsonl");
  CHECK(!a.empty());
  CHECK(a == slurp(dir / "ratsel_det_b.jsonl"));

  cfg.seed = 78;
  cfg.trace_path = dir / "ratsel_det_c.jsonl";
  run_experiment(cfg);
  CHECK(a != slurp(dir / "ratsel_det_c.jsonl"));

  // The file holds exactly the in-memory trace.
  CHECK(read_trace(dir / "ratsel_det_a.jsonl") == run_experiment(quick(400, 77)).trace);
  for (const char* name : {"ratsel_det_a.jsonl", "ratsel_det_b.jsonl", "ratsel_det_c.jsonl"}) {
    std::filesystem::remove(dir / name);
  }
}

TEST_CASE("unwritable trace path fails up front") {
  ExperimentConfig cfg = quick(10);
  cfg.trace_path = "/nonexistent-dir/trace.jsonl";
  CHECK_THROWS_WITH_AS(run_experiment(cfg), doctest::Contains("/nonexistent-dir/trace.jsonl"),
                       IoError);
}

TEST_CASE("invalid configs are rejected before running") {
  ExperimentConfig cfg = quick(0);
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = quick(10);
  cfg.ranges.at(RatId::FiveG, Metric::Jitter) = {5, 1};
  CHECK_THROWS_AS(Experiment{cfg}, ConfigError);
}

TEST_CASE("pure exploration agrees with the oracle about a quarter of the time") {
  ExperimentConfig cfg = quick(2000, 11);
  cfg.agent.epsilon_start = 1.0;
  cfg.agent.epsilon_min = 1.0;
  cfg.agent.epsilon_decay = 1.0;
  const ExperimentResult r = run_experiment(cfg);
  const AgreementReport report = oracle_check(r.trace, 500);
  const double all = report.rows.back().agreement(Selector::Dqn);
  CHECK(all >= 22.0);
  CHECK(all <= 28.0);
  for (const EpochRecord& rec : r.trace) REQUIRE(rec.epsilon == 1.0);
}

TEST_CASE("evaluate_policy is deterministic and does not learn") {
  const ExperimentResult r = run_experiment(quick(300));
  const DqnAgent before = r.agent;
  const PolicyEvaluation a = evaluate_policy(r.agent, MetricRanges::defaults(), 200, 0.0, 9);
  const PolicyEvaluation b = evaluate_policy(r.agent, MetricRanges::defaults(), 200, 0.0, 9);
  CHECK(a.states == 200);
  CHECK(a.oracle_agreement_pct == b.oracle_agreement_pct);
  CHECK(a.fiveg_pct == b.fiveg_pct);
  CHECK(r.agent == before);
}
