#include "ratsel/qnet.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ratsel/errors.hpp"
#include "ratsel/format.hpp"
#include "ratsel/random.hpp"

namespace ratsel {

namespace {

std::vector<std::size_t> layer_sizes(const Architecture& arch) {
  std::vector<std::size_t> sizes;
  sizes.reserve(arch.hidden.size() + 2);
  sizes.push_back(arch.inputs);
  sizes.insert(sizes.end(), arch.hidden.begin(), arch.hidden.end());
  sizes.push_back(arch.outputs);
  return sizes;
}

// Pre-activations and activations of every layer for one input.
struct ForwardCache {
  std::vector<std::vector<double>> activations;  // [0] = input, [k] = output of layer k-1
  std::vector<std::vector<double>> preactivations;
};

ForwardCache forward_cached(std::span<const DenseLayer> layers, std::span<const double> x) {
  ForwardCache cache;
  cache.activations.emplace_back(x.begin(), x.end());
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const DenseLayer& layer = layers[k];
    const std::vector<double>& in = cache.activations.back();
    std::vector<double> z(layer.bias);
    for (std::size_t row = 0; row < layer.outputs; ++row) {
      const double* w = layer.weights.data() + row * layer.inputs;
      double acc = 0.0;
      for (std::size_t col = 0; col < layer.inputs; ++col) {
        acc += w[col] * in[col];
      }
      z[row] += acc;
    }
    std::vector<double> a(z);
    if (k + 1 < layers.size()) {
      for (double& v : a) {
        v = std::max(0.0, v);
      }
    }
    cache.preactivations.push_back(std::move(z));
    cache.activations.push_back(std::move(a));
  }
  return cache;
}

void check_input(const Architecture& arch, std::span<const double> state) {
  if (state.size() != arch.inputs) {
    throw DimensionError("Q-network expects " + std::to_string(arch.inputs) +
                         " inputs, got " + std::to_string(state.size()));
  }
}

void check_batch(const QNetwork& params, std::span<const Transition> batch,
                 std::span<const double> targets) {
  if (targets.size() != batch.size()) {
    throw DimensionError("target count does not match batch size");
  }
  for (const Transition& t : batch) {
    check_input(params.architecture(), t.state);
    if (t.action >= params.architecture().outputs) {
      throw DimensionError("transition action out of range: " + std::to_string(t.action));
    }
  }
}

std::vector<double> read_values(std::istream& in, const std::string& tag, std::size_t count) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError("checkpoint truncated before '" + tag + "' line");
  }
  std::istringstream fields(line);
  std::string head;
  fields >> head;
  if (head != tag) {
    throw ValidationError("checkpoint: expected '" + tag + "' line, got '" + head + "'");
  }
  std::vector<double> values;
  values.reserve(count);
  std::string token;
  while (fields >> token) {
    values.push_back(parse_double(token));
  }
  if (values.size() != count) {
    throw ValidationError("checkpoint: '" + tag + "' line has " + std::to_string(values.size()) +
                          " values, expected " + std::to_string(count));
  }
  return values;
}

}  // namespace

void Architecture::validate() const {
  if (inputs == 0 || outputs == 0) {
    throw ConfigError("architecture: input and output sizes must be positive");
  }
  for (std::size_t h : hidden) {
    if (h == 0) {
      throw ConfigError("architecture: hidden layer sizes must be positive");
    }
  }
}

std::size_t Architecture::parameter_count() const {
  const auto sizes = layer_sizes(*this);
  std::size_t count = 0;
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
    count += sizes[k] * sizes[k + 1] + sizes[k + 1];
  }
  return count;
}

QNetwork::QNetwork(const Architecture& arch) : arch_(arch) {
  arch_.validate();
  const auto sizes = layer_sizes(arch_);
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
    DenseLayer layer;
    layer.inputs = sizes[k];
    layer.outputs = sizes[k + 1];
    layer.weights.assign(layer.inputs * layer.outputs, 0.0);
    layer.bias.assign(layer.outputs, 0.0);
    layers_.push_back(std::move(layer));
  }
}

QNetwork QNetwork::init(std::uint64_t seed, const Architecture& arch) {
  QNetwork net(arch);
  Rng rng(seed);
  for (DenseLayer& layer : net.layers_) {
    const double bound = std::sqrt(6.0 / static_cast<double>(layer.inputs + layer.outputs));
    for (double& w : layer.weights) {
      w = rng.uniform(-bound, bound);
    }
  }
  return net;
}

std::vector<double> QNetwork::forward(std::span<const double> state) const {
  check_input(arch_, state);
  std::vector<double> current(state.begin(), state.end());
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const DenseLayer& layer = layers_[k];
    std::vector<double> next(layer.bias);
    for (std::size_t row = 0; row < layer.outputs; ++row) {
      const double* w = layer.weights.data() + row * layer.inputs;
      double acc = 0.0;
      for (std::size_t col = 0; col < layer.inputs; ++col) {
        acc += w[col] * current[col];
      }
      next[row] += acc;
      if (k + 1 < layers_.size()) {
        next[row] = std::max(0.0, next[row]);
      }
    }
    current = std::move(next);
  }
  return current;
}

double& QNetwork::parameter_ref(std::size_t flat_index) {
  std::size_t offset = flat_index;
  for (DenseLayer& layer : layers_) {
    if (offset < layer.weights.size()) {
      return layer.weights[offset];
    }
    offset -= layer.weights.size();
    if (offset < layer.bias.size()) {
      return layer.bias[offset];
    }
    offset -= layer.bias.size();
  }
  throw std::out_of_range("parameter index out of range: " + std::to_string(flat_index));
}

double QNetwork::parameter(std::size_t flat_index) const {
  return const_cast<QNetwork*>(this)->parameter_ref(flat_index);
}

void QNetwork::set_parameter(std::size_t flat_index, double value) {
  parameter_ref(flat_index) = value;
}

std::vector<double> QNetwork::flat_parameters() const {
  std::vector<double> flat;
  flat.reserve(parameter_count());
  for (const DenseLayer& layer : layers_) {
    flat.insert(flat.end(), layer.weights.begin(), layer.weights.end());
    flat.insert(flat.end(), layer.bias.begin(), layer.bias.end());
  }
  return flat;
}

void QNetwork::apply_gradient(std::span<const double> gradient, double step) {
  if (gradient.size() != parameter_count()) {
    throw DimensionError("gradient length does not match parameter count");
  }
  std::size_t i = 0;
  for (DenseLayer& layer : layers_) {
    for (double& w : layer.weights) {
      w -= step * gradient[i++];
    }
    for (double& b : layer.bias) {
      b -= step * gradient[i++];
    }
  }
}

bool QNetwork::all_finite() const {
  for (const DenseLayer& layer : layers_) {
    for (double w : layer.weights) {
      if (!std::isfinite(w)) return false;
    }
    for (double b : layer.bias) {
      if (!std::isfinite(b)) return false;
    }
  }
  return true;
}

void QNetwork::save(std::ostream& out) const {
  out << "ratsel-qnet 1\n";
  out << "arch " << arch_.inputs;
  for (std::size_t h : arch_.hidden) {
    out << ' ' << h;
  }
  out << ' ' << arch_.outputs << '\n';
  for (const DenseLayer& layer : layers_) {
    out << 'w';
    for (double w : layer.weights) {
      out << ' ' << format_double(w);
    }
    out << "\nb";
    for (double b : layer.bias) {
      out << ' ' << format_double(b);
    }
    out << '\n';
  }
  if (!out) {
    throw IoError("failed writing Q-network checkpoint");
  }
}

QNetwork QNetwork::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "ratsel-qnet 1") {
    throw ValidationError("not a ratsel Q-network checkpoint");
  }
  if (!std::getline(in, line)) {
    throw ValidationError("checkpoint truncated before 'arch' line");
  }
  std::istringstream fields(line);
  std::string head;
  fields >> head;
  if (head != "arch") {
    throw ValidationError("checkpoint: expected 'arch' line");
  }
  std::vector<std::size_t> sizes;
  std::size_t size = 0;
  while (fields >> size) {
    sizes.push_back(size);
  }
  if (sizes.size() < 2) {
    throw ValidationError("checkpoint: architecture needs at least two sizes");
  }
  Architecture arch;
  arch.inputs = sizes.front();
  arch.outputs = sizes.back();
  arch.hidden.assign(sizes.begin() + 1, sizes.end() - 1);
  QNetwork net(arch);
  for (DenseLayer& layer : net.layers_) {
    layer.weights = read_values(in, "w", layer.weights.size());
    layer.bias = read_values(in, "b", layer.bias.size());
  }
  return net;
}

double td_update_scalar(double q, double alpha, double r, double gamma, double max_q_next) {
  return q + alpha * (r + gamma * max_q_next - q);
}

std::vector<double> td_targets(const QNetwork& target, std::span<const Transition> batch,
                               double gamma) {
  std::vector<double> y;
  y.reserve(batch.size());
  for (const Transition& t : batch) {
    if (t.done) {
      y.push_back(t.reward);
      continue;
    }
    const auto q_next = target.forward(t.next_state);
    y.push_back(t.reward + gamma * *std::max_element(q_next.begin(), q_next.end()));
  }
  return y;
}

double batch_loss(const QNetwork& params, std::span<const Transition> batch,
                  std::span<const double> targets) {
  check_batch(params, batch, targets);
  if (batch.empty()) {
    return 0.0;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double err = params.forward(batch[i].state)[batch[i].action] - targets[i];
    sum += err * err;
  }
  return sum / static_cast<double>(batch.size());
}

LossGradient loss_and_gradient(const QNetwork& params, std::span<const Transition> batch,
                               std::span<const double> targets) {
  check_batch(params, batch, targets);
  LossGradient out;
  out.gradient.assign(params.parameter_count(), 0.0);
  if (batch.empty()) {
    return out;
  }

  const std::span<const DenseLayer> layers = params.layers();
  // Flat offset of each layer's weight block.
  std::vector<std::size_t> offsets;
  std::size_t offset = 0;
  for (const DenseLayer& layer : layers) {
    offsets.push_back(offset);
    offset += layer.weights.size() + layer.bias.size();
  }

  const double scale = 1.0 / static_cast<double>(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Transition& t = batch[i];
    const ForwardCache cache = forward_cached(layers, t.state);
    const double err = cache.activations.back()[t.action] - targets[i];
    out.loss += err * err * scale;

    std::vector<double> delta(layers.back().outputs, 0.0);
    delta[t.action] = 2.0 * err * scale;

    for (std::size_t k = layers.size(); k-- > 0;) {
      const DenseLayer& layer = layers[k];
      const std::vector<double>& in = cache.activations[k];
      double* grad_w = out.gradient.data() + offsets[k];
      double* grad_b = grad_w + layer.weights.size();
      for (std::size_t row = 0; row < layer.outputs; ++row) {
        if (delta[row] == 0.0) continue;
        for (std::size_t col = 0; col < layer.inputs; ++col) {
          grad_w[row * layer.inputs + col] += delta[row] * in[col];
        }
        grad_b[row] += delta[row];
      }
      if (k == 0) break;
      std::vector<double> prev(layer.inputs, 0.0);
      for (std::size_t row = 0; row < layer.outputs; ++row) {
        if (delta[row] == 0.0) continue;
        for (std::size_t col = 0; col < layer.inputs; ++col) {
          prev[col] += layer.weight(row, col) * delta[row];
        }
      }
      const std::vector<double>& z = cache.preactivations[k - 1];
      for (std::size_t col = 0; col < layer.inputs; ++col) {
        if (z[col] <= 0.0) prev[col] = 0.0;
      }
      delta = std::move(prev);
    }
  }
  return out;
}

TrainResult train_batch(QNetwork& params, const QNetwork& target,
                        std::span<const Transition> batch, double alpha, double gamma) {
  if (batch.empty()) {
    return {.loss = 0.0, .skipped = true};
  }
  const auto targets = td_targets(target, batch, gamma);
  const LossGradient lg = loss_and_gradient(params, batch, targets);
  params.apply_gradient(lg.gradient, alpha);
  if (!params.all_finite()) {
    throw std::runtime_error("Q-network parameters became non-finite; lower the learning rate");
  }
  return {.loss = lg.loss, .skipped = false};
}

}  // namespace ratsel
