#include <benchmark/benchmark.h>

#include <vector>

#include "ratsel/agent.hpp"
#include "ratsel/env_model.hpp"
#include "ratsel/experiment.hpp"
#include "ratsel/madm.hpp"
#include "ratsel/qnet.hpp"
#include "ratsel/reward.hpp"

namespace {

using namespace ratsel;

std::vector<Transition> make_batch(Rng& rng, std::size_t n) {
  std::vector<Transition> batch;
  for (std::size_t i = 0; i < n; ++i) {
    const EnvState s = sample_state(MetricRanges::defaults(), rng);
    Transition t;
    t.state.assign(s.normalized.begin(), s.normalized.end());
    t.next_state = t.state;
    t.action = rng.index(4);
    t.reward = rewards(s)[t.action];
    t.done = true;
    batch.push_back(std::move(t));
  }
  return batch;
}

void BM_Reward(benchmark::State& st) {
  Rng rng(1);
  const EnvState m = sample_state(MetricRanges::defaults(), rng);
  for (auto _ : st) benchmark::DoNotOptimize(rewards(m));
}
BENCHMARK(BM_Reward);

void BM_Forward(benchmark::State& st) {
  const QNetwork net = QNetwork::init(1, Architecture{});
  const std::vector<double> x(kStateSize, 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(net.forward(x));
}
BENCHMARK(BM_Forward);

void BM_TrainBatch(benchmark::State& st) {
  Rng rng(2);
  QNetwork net = QNetwork::init(1, Architecture{});
  const QNetwork target = net;
  const auto batch = make_batch(rng, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(train_batch(net, target, batch, 1e-3, 0.9));
}
BENCHMARK(BM_TrainBatch)->Arg(8)->Arg(32)->Arg(128);

void BM_Madm(benchmark::State& st) {
  Rng rng(3);
  const EnvState m = sample_state(MetricRanges::defaults(), rng);
  const auto dm = madm::decision_matrix(m, madm::default_weights());
  const auto pairwise = madm::PairwiseMatrix::from_weights(madm::default_weights());
  for (auto _ : st) {
    benchmark::DoNotOptimize(madm::saw(dm));
    benchmark::DoNotOptimize(madm::wpm(dm));
    benchmark::DoNotOptimize(madm::topsis(dm));
    benchmark::DoNotOptimize(madm::ahp_rank(dm, pairwise));
  }
}
BENCHMARK(BM_Madm);

void BM_Experiment(benchmark::State& st) {
  ExperimentConfig cfg;
  cfg.epochs = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(run_experiment(cfg));
}
BENCHMARK(BM_Experiment)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
