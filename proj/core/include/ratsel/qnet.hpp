#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace ratsel {

/// Fully-connected layer sizes. Hidden layers use ReLU; the output layer is linear.
struct Architecture {
  std::size_t inputs = 24;
  std::vector<std::size_t> hidden{64, 64};
  std::size_t outputs = 4;

  /// 24 -> 64 -> 64 -> 4.
  static Architecture dqn_default() { return {}; }

  /// Throws ConfigError for zero-sized layers.
  void validate() const;
  std::size_t parameter_count() const;

  bool operator==(const Architecture&) const = default;
};

struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;  // outputs x inputs, row-major
  std::vector<double> bias;     // outputs

  double& weight(std::size_t row, std::size_t col) { return weights[row * inputs + col]; }
  double weight(std::size_t row, std::size_t col) const { return weights[row * inputs + col]; }

  bool operator==(const DenseLayer&) const = default;
};

/// One (s, a, r, s', done) sample.
struct Transition {
  std::vector<double> state;
  std::size_t action = 0;
  double reward = 0.0;
  std::vector<double> next_state;
  bool done = true;

  bool operator==(const Transition&) const = default;
};

/// Q-value approximator. Parameters are addressable through a flat index
/// (layer-major; within a layer, weights row-major then biases), which is also
/// the checkpoint order.
class QNetwork {
 public:
  /// All-zero parameters.
  explicit QNetwork(const Architecture& arch = Architecture::dqn_default());

  /// Glorot-uniform weights (bound sqrt(6 / (fan_in + fan_out))) and zero biases.
  static QNetwork init(std::uint64_t seed, const Architecture& arch = Architecture::dqn_default());

  const Architecture& architecture() const { return arch_; }
  std::span<DenseLayer> layers() { return layers_; }
  std::span<const DenseLayer> layers() const { return layers_; }

  /// Throws DimensionError when state.size() != inputs.
  std::vector<double> forward(std::span<const double> state) const;

  std::size_t parameter_count() const { return arch_.parameter_count(); }
  double parameter(std::size_t flat_index) const;
  void set_parameter(std::size_t flat_index, double value);
  std::vector<double> flat_parameters() const;

  /// params -= step * gradient (gradient in flat order).
  void apply_gradient(std::span<const double> gradient, double step);

  bool all_finite() const;

  /// Text checkpoint:
  ///   ratsel-qnet 1
  ///   arch <inputs> <hidden...> <outputs>
  ///   then per layer, a "w" line (row-major weights) and a "b" line.
  /// Values use shortest round-trip decimal, so save/load is lossless.
  void save(std::ostream& out) const;
  static QNetwork load(std::istream& in);

  bool operator==(const QNetwork&) const = default;

 private:
  double& parameter_ref(std::size_t flat_index);

  Architecture arch_;
  std::vector<DenseLayer> layers_;
};

/// Tabular TD rule: q + alpha * (r + gamma * max_q_next - q).
double td_update_scalar(double q, double alpha, double r, double gamma, double max_q_next);

/// y = r for terminal transitions, r + gamma * max_a Q_target(s', a) otherwise.
std::vector<double> td_targets(const QNetwork& target, std::span<const Transition> batch,
                               double gamma);

struct LossGradient {
  double loss = 0.0;
  std::vector<double> gradient;  // flat order
};

/// Mean over the batch of (Q(s)[a] - y)^2 and its exact gradient. Only the
/// taken action's output contributes.
LossGradient loss_and_gradient(const QNetwork& params, std::span<const Transition> batch,
                               std::span<const double> targets);

/// Mean squared TD error, no gradient.
double batch_loss(const QNetwork& params, std::span<const Transition> batch,
                  std::span<const double> targets);

struct TrainResult {
  double loss = 0.0;
  bool skipped = false;
};

/// One SGD step with learning rate alpha on the semi-gradient DQN loss.
/// `loss` is measured before the step. An empty batch is a no-op reported as skipped.
TrainResult train_batch(QNetwork& params, const QNetwork& target,
                        std::span<const Transition> batch, double alpha, double gamma);

/// Independent copy for use as the bootstrap network.
inline QNetwork sync_target(const QNetwork& params) { return params; }

}  // namespace ratsel
