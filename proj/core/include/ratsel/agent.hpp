#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ratsel/env_model.hpp"
#include "ratsel/qnet.hpp"
#include "ratsel/random.hpp"
#include "ratsel/rat.hpp"

namespace ratsel {

struct AgentConfig {
  double epsilon_start = 1.0;
  double epsilon_min = 0.05;
  double epsilon_decay = 0.995;
  double gamma = 0.9;
  double alpha = 1e-3;  // SGD learning rate
  std::size_t batch_size = 32;
  std::size_t memory_capacity = 10000;
  std::size_t target_sync_period = 50;  // training steps between target refreshes
  std::uint64_t seed = 0;
  Architecture architecture = Architecture::dqn_default();

  /// Throws ConfigError on out-of-range knobs.
  void validate() const;

  bool operator==(const AgentConfig&) const = default;
};

/// Bounded FIFO of transitions; the oldest entry is evicted once full.
class ReplayMemory {
 public:
  explicit ReplayMemory(std::size_t capacity);

  void push(Transition transition);

  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return items_.empty(); }

  /// i = 0 is the oldest stored transition.
  const Transition& operator[](std::size_t i) const;

  /// `count` uniform draws with replacement, indexed oldest-first so the draw
  /// does not depend on the ring buffer's physical layout.
  std::vector<Transition> sample(std::size_t count, Rng& rng) const;

  /// Same capacity and same logical (oldest-first) contents.
  bool operator==(const ReplayMemory& other) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // next slot to overwrite once full
  std::vector<Transition> items_;
};

/// With probability epsilon a uniformly random action, otherwise the argmax
/// of q_values (lowest index on ties). Always consumes one uniform draw, plus
/// one index draw when exploring.
RatId select_action(std::span<const double> q_values, double epsilon, Rng& rng);

/// epsilon * decay while epsilon > epsilon_min, otherwise epsilon unchanged.
double decay_epsilon(double epsilon, const AgentConfig& cfg);

struct StepOutcome {
  RatId chosen = RatId::FiveG;
  double reward = 0.0;
  double epsilon = 0.0;  // exploration rate used for this selection
  Transition transition;
  bool trained = false;
  double loss = 0.0;
  bool target_synced = false;
};

/// DQN network selector. One episode is one selection on one environment state.
class DqnAgent {
 public:
  explicit DqnAgent(const AgentConfig& cfg);

  /// Selects, stores the transition, trains once the memory holds a full
  /// batch, and refreshes the target every `target_sync_period` training steps.
  /// Does not decay epsilon; call end_episode() for that.
  StepOutcome step_episode(const EnvState& state);

  /// Counts the episode and decays epsilon.
  void end_episode();

  std::array<double, kRatCount> q_values(const EnvState& state) const;
  RatId greedy_action(const EnvState& state) const;

  /// Selection with an explicit exploration rate and random source, no learning.
  RatId act(const EnvState& state, double epsilon, Rng& rng) const;

  const AgentConfig& config() const { return cfg_; }
  double epsilon() const { return epsilon_; }
  std::size_t train_steps() const { return train_steps_; }
  std::size_t target_syncs() const { return target_syncs_; }
  std::size_t episodes() const { return episodes_; }
  const std::array<std::size_t, kRatCount>& selection_counts() const { return selections_; }
  const QNetwork& online() const { return online_; }
  const QNetwork& target() const { return target_; }
  const ReplayMemory& memory() const { return memory_; }

  /// Everything needed to resume bit-identically: networks, memory, epsilon,
  /// counters and random engine state. JSON.
  void save_checkpoint(std::ostream& out) const;
  static DqnAgent load_checkpoint(std::istream& in);

  bool operator==(const DqnAgent&) const = default;

 private:
  AgentConfig cfg_;
  Rng rng_;
  QNetwork online_;
  QNetwork target_;
  ReplayMemory memory_;
  double epsilon_;
  std::size_t train_steps_ = 0;
  std::size_t target_syncs_ = 0;
  std::size_t episodes_ = 0;
  std::array<std::size_t, kRatCount> selections_{};
};

}  // namespace ratsel
