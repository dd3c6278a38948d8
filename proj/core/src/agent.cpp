#include "ratsel/agent.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <string>

#include "ratsel/errors.hpp"
#include "ratsel/reward.hpp"

namespace ratsel {

namespace {

using nlohmann::json;

constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kPolicyStream = 1;

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) {
      best = i;
    }
  }
  return best;
}

json network_to_json(const QNetwork& net) {
  json layers = json::array();
  for (const DenseLayer& layer : net.layers()) {
    layers.push_back({{"weights", layer.weights}, {"bias", layer.bias}});
  }
  return layers;
}

void network_from_json(const json& j, QNetwork& net) {
  auto layers = net.layers();
  if (!j.is_array() || j.size() != layers.size()) {
    throw ValidationError("checkpoint: layer count mismatch");
  }
  for (std::size_t k = 0; k < layers.size(); ++k) {
    auto weights = j[k].at("weights").get<std::vector<double>>();
    auto bias = j[k].at("bias").get<std::vector<double>>();
    if (weights.size() != layers[k].weights.size() || bias.size() != layers[k].bias.size()) {
      throw ValidationError("checkpoint: layer " + std::to_string(k) + " shape mismatch");
    }
    layers[k].weights = std::move(weights);
    layers[k].bias = std::move(bias);
  }
}

json config_to_json(const AgentConfig& cfg) {
  return {
      {"epsilon_start", cfg.epsilon_start},
      {"epsilon_min", cfg.epsilon_min},
      {"epsilon_decay", cfg.epsilon_decay},
      {"gamma", cfg.gamma},
      {"alpha", cfg.alpha},
      {"batch_size", cfg.batch_size},
      {"memory_capacity", cfg.memory_capacity},
      {"target_sync_period", cfg.target_sync_period},
      {"seed", cfg.seed},
      {"inputs", cfg.architecture.inputs},
      {"hidden", cfg.architecture.hidden},
      {"outputs", cfg.architecture.outputs},
  };
}

AgentConfig config_from_json(const json& j) {
  AgentConfig cfg;
  cfg.epsilon_start = j.at("epsilon_start").get<double>();
  cfg.epsilon_min = j.at("epsilon_min").get<double>();
  cfg.epsilon_decay = j.at("epsilon_decay").get<double>();
  cfg.gamma = j.at("gamma").get<double>();
  cfg.alpha = j.at("alpha").get<double>();
  cfg.batch_size = j.at("batch_size").get<std::size_t>();
  cfg.memory_capacity = j.at("memory_capacity").get<std::size_t>();
  cfg.target_sync_period = j.at("target_sync_period").get<std::size_t>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.architecture.inputs = j.at("inputs").get<std::size_t>();
  cfg.architecture.hidden = j.at("hidden").get<std::vector<std::size_t>>();
  cfg.architecture.outputs = j.at("outputs").get<std::size_t>();
  return cfg;
}

}  // namespace

void AgentConfig::validate() const {
  if (!(epsilon_min >= 0.0 && epsilon_min <= epsilon_start && epsilon_start <= 1.0)) {
    throw ConfigError("agent: require 0 <= epsilon_min <= epsilon_start <= 1");
  }
  if (!(epsilon_decay > 0.0 && epsilon_decay <= 1.0)) {
    throw ConfigError("agent: epsilon_decay must lie in (0, 1]");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw ConfigError("agent: gamma must lie in [0, 1)");
  }
  if (!(alpha > 0.0 && std::isfinite(alpha))) {
    throw ConfigError("agent: alpha must be positive and finite");
  }
  if (batch_size < 1) {
    throw ConfigError("agent: batch_size must be at least 1");
  }
  if (memory_capacity < 1) {
    throw ConfigError("agent: memory_capacity must be at least 1");
  }
  if (target_sync_period < 1) {
    throw ConfigError("agent: target_sync_period must be at least 1");
  }
  architecture.validate();
  if (architecture.inputs != kStateSize || architecture.outputs != kRatCount) {
    throw ConfigError("agent: network must map " + std::to_string(kStateSize) + " inputs to " +
                      std::to_string(kRatCount) + " outputs");
  }
}

ReplayMemory::ReplayMemory(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) {
    throw ConfigError("replay memory capacity must be positive");
  }
  items_.reserve(std::min<std::size_t>(capacity, 1 << 16));
}

void ReplayMemory::push(Transition transition) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(transition));
    return;
  }
  items_[head_] = std::move(transition);
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayMemory::operator[](std::size_t i) const {
  if (i >= items_.size()) {
    throw std::out_of_range("replay memory index out of range");
  }
  return items_[(head_ + i) % items_.size()];
}

bool ReplayMemory::operator==(const ReplayMemory& other) const {
  if (capacity_ != other.capacity_ || size() != other.size()) {
    return false;
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (!((*this)[i] == other[i])) {
      return false;
    }
  }
  return true;
}

std::vector<Transition> ReplayMemory::sample(std::size_t count, Rng& rng) const {
  if (items_.empty()) {
    return {};
  }
  std::vector<Transition> batch;
  batch.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    batch.push_back((*this)[rng.index(items_.size())]);
  }
  return batch;
}

RatId select_action(std::span<const double> q_values, double epsilon, Rng& rng) {
  if (q_values.size() != kRatCount) {
    throw DimensionError("select_action expects " + std::to_string(kRatCount) + " Q-values");
  }
  if (rng.uniform() < epsilon) {
    return rat_from_index(rng.index(kRatCount));
  }
  return rat_from_index(argmax(q_values));
}

double decay_epsilon(double epsilon, const AgentConfig& cfg) {
  if (epsilon > cfg.epsilon_min) {
    return epsilon * cfg.epsilon_decay;
  }
  return epsilon;
}

DqnAgent::DqnAgent(const AgentConfig& cfg)
    : cfg_((cfg.validate(), cfg)),
      rng_(derive_seed(cfg.seed, kPolicyStream)),
      online_(QNetwork::init(derive_seed(cfg.seed, kInitStream), cfg.architecture)),
      target_(sync_target(online_)),
      memory_(cfg.memory_capacity),
      epsilon_(cfg.epsilon_start) {}

std::array<double, kRatCount> DqnAgent::q_values(const EnvState& state) const {
  const auto q = online_.forward(state.normalized);
  std::array<double, kRatCount> out{};
  std::copy(q.begin(), q.end(), out.begin());
  return out;
}

RatId DqnAgent::greedy_action(const EnvState& state) const {
  const auto q = q_values(state);
  return rat_from_index(argmax(q));
}

RatId DqnAgent::act(const EnvState& state, double epsilon, Rng& rng) const {
  const auto q = q_values(state);
  return select_action(q, epsilon, rng);
}

StepOutcome DqnAgent::step_episode(const EnvState& state) {
  StepOutcome out;
  out.epsilon = epsilon_;
  out.chosen = act(state, epsilon_, rng_);
  out.reward = reward(state[out.chosen]);

  // Single-step episode: the next state is the same epoch's state and is never
  // bootstrapped from because done is always true.
  const std::vector<double> state_vec(state.normalized.begin(), state.normalized.end());
  out.transition = Transition{state_vec, index_of(out.chosen), out.reward, state_vec, true};
  memory_.push(out.transition);
  ++selections_[index_of(out.chosen)];

  if (memory_.size() >= cfg_.batch_size) {
    const auto batch = memory_.sample(cfg_.batch_size, rng_);
    const TrainResult result = train_batch(online_, target_, batch, cfg_.alpha, cfg_.gamma);
    out.trained = !result.skipped;
    out.loss = result.loss;
    ++train_steps_;
    if (train_steps_ % cfg_.target_sync_period == 0) {
      target_ = sync_target(online_);
      ++target_syncs_;
      out.target_synced = true;
    }
  }
  return out;
}

void DqnAgent::end_episode() {
  ++episodes_;
  epsilon_ = decay_epsilon(epsilon_, cfg_);
}

void DqnAgent::save_checkpoint(std::ostream& out) const {
  json memory = json::array();
  for (std::size_t i = 0; i < memory_.size(); ++i) {
    const Transition& t = memory_[i];
    memory.push_back({{"s", t.state},
                      {"a", t.action},
                      {"r", t.reward},
                      {"s2", t.next_state},
                      {"done", t.done}});
  }
  const json j = {
      {"format", "ratsel-agent"},
      {"version", 1},
      {"config", config_to_json(cfg_)},
      {"rng", rng_.state()},
      {"epsilon", epsilon_},
      {"train_steps", train_steps_},
      {"target_syncs", target_syncs_},
      {"episodes", episodes_},
      {"selections", selections_},
      {"online", network_to_json(online_)},
      {"target", network_to_json(target_)},
      {"memory", memory},
  };
  out << j.dump() << '\n';
  if (!out) {
    throw IoError("failed writing agent checkpoint");
  }
}

DqnAgent DqnAgent::load_checkpoint(std::istream& in) {
  json j;
  try {
    in >> j;
    if (j.at("format") != "ratsel-agent" || j.at("version") != 1) {
      throw ValidationError("not a ratsel agent checkpoint");
    }
    DqnAgent agent(config_from_json(j.at("config")));
    agent.rng_.restore(j.at("rng").get<std::string>());
    agent.epsilon_ = j.at("epsilon").get<double>();
    agent.train_steps_ = j.at("train_steps").get<std::size_t>();
    agent.target_syncs_ = j.at("target_syncs").get<std::size_t>();
    agent.episodes_ = j.at("episodes").get<std::size_t>();
    agent.selections_ = j.at("selections").get<std::array<std::size_t, kRatCount>>();
    network_from_json(j.at("online"), agent.online_);
    network_from_json(j.at("target"), agent.target_);
    for (const json& t : j.at("memory")) {
      agent.memory_.push(Transition{t.at("s").get<std::vector<double>>(),
                                    t.at("a").get<std::size_t>(), t.at("r").get<double>(),
                                    t.at("s2").get<std::vector<double>>(),
                                    t.at("done").get<bool>()});
    }
    return agent;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed agent checkpoint: ") + e.what());
  }
}

}  // namespace ratsel
