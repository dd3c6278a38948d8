#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ratsel/errors.hpp"
#include "ratsel/qnet.hpp"
#include "ratsel/random.hpp"
#include "test_support.hpp"

using namespace ratsel;

namespace {

// Forward pass written against the flat parameter layout only.
std::vector<double> reference_forward(const QNetwork& net, const std::vector<double>& x) {
  std::vector<std::size_t> sizes{net.architecture().inputs};
  for (std::size_t h : net.architecture().hidden) sizes.push_back(h);
  sizes.push_back(net.architecture().outputs);
  const std::vector<double> flat = net.flat_parameters();
  std::size_t offset = 0;
  std::vector<double> a = x;
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
    const std::size_t in = sizes[k];
    const std::size_t out = sizes[k + 1];
    std::vector<double> z(out);
    for (std::size_t r = 0; r < out; ++r) {
      long double acc = flat[offset + out * in + r];
      for (std::size_t c = 0; c < in; ++c) acc += (long double)flat[offset + r * in + c] * a[c];
      z[r] = static_cast<double>(acc);
      if (k + 2 < sizes.size()) z[r] = z[r] > 0 ? z[r] : 0.0;
    }
    offset += out * in + out;
    a = std::move(z);
  }
  return a;
}

std::vector<double> random_vector(Rng& rng, std::size_t n, double lo = 0.0, double hi = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

Transition random_transition(Rng& rng, std::size_t inputs, std::size_t outputs, bool done) {
  Transition t;
  t.state = random_vector(rng, inputs);
  t.action = rng.index(outputs);
  t.reward = rng.uniform(-5.0, 20.0);
  t.next_state = random_vector(rng, inputs);
  t.done = done;
  return t;
}

}  // namespace

TEST_CASE("architecture and init") {
  const Architecture arch = Architecture::dqn_default();
  CHECK(arch.inputs == 24);
  CHECK(arch.hidden == std::vector<std::size_t>{64, 64});
  CHECK(arch.outputs == 4);
  CHECK(arch.parameter_count() == 24 * 64 + 64 + 64 * 64 + 64 + 64 * 4 + 4);
  CHECK(arch.parameter_count() == 6020);

  const QNetwork a = QNetwork::init(7);
  const QNetwork b = QNetwork::init(7);
  CHECK(a == b);
  CHECK_FALSE(a == QNetwork::init(8));
  CHECK(a.parameter_count() == 6020);

  for (const DenseLayer& layer : a.layers()) {
    const double bound = std::sqrt(6.0 / static_cast<double>(layer.inputs + layer.outputs));
    for (double bias : layer.bias) CHECK(bias == 0.0);
    double sum = 0.0;
    for (double w : layer.weights) {
      REQUIRE(std::abs(w) <= bound);
      sum += w;
    }
    // Zero-mean draw: the sample mean is well inside the bound.
    CHECK(std::abs(sum / static_cast<double>(layer.weights.size())) < bound / 4);
  }

  CHECK_THROWS_AS(QNetwork(Architecture{24, {0}, 4}), ConfigError);
  CHECK_THROWS_AS(QNetwork(Architecture{0, {}, 4}), ConfigError);
}

TEST_CASE("forward") {
  SUBCASE("zero network outputs zeros") {
    const QNetwork net;
    const std::vector<double> x(24, 0.7);
    CHECK(net.forward(x) == std::vector<double>(4, 0.0));
  }
  SUBCASE("a single linear layer can select inputs") {
    QNetwork net(Architecture{24, {}, 4});
    DenseLayer& layer = net.layers()[0];
    const std::array<std::size_t, 4> picks{0, 6, 12, 18};
    for (std::size_t r = 0; r < 4; ++r) layer.weight(r, picks[r]) = 1.0;
    std::vector<double> x(24);
    for (std::size_t i = 0; i < 24; ++i) x[i] = 0.1 * static_cast<double>(i);
    const auto q = net.forward(x);
    for (std::size_t r = 0; r < 4; ++r) CHECK(q[r] == x[picks[r]]);
  }
  SUBCASE("matches an independent evaluator") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      QNetwork net = QNetwork::init(rng.next_u64());
      for (std::size_t i = 0; i < net.parameter_count(); ++i) {
        if (i % 7 == 0) net.set_parameter(i, rng.uniform(-0.5, 0.5));  // non-zero biases too
      }
      const auto x = random_vector(rng, 24);
      const auto q = net.forward(x);
      const auto ref = reference_forward(net, x);
      REQUIRE(q.size() == 4);
      for (std::size_t k = 0; k < 4; ++k) {
        REQUIRE(ratsel::testing::close_rel(q[k], ref[k], 1e-10, 1e-12));
      }
    }
  }
  SUBCASE("wrong input length") {
    const QNetwork net;
    CHECK_THROWS_AS(net.forward(std::vector<double>(23)), DimensionError);
  }
}

TEST_CASE("td_update_scalar") {
  CHECK(td_update_scalar(0.0, 1.0, 3.0, 0.0, 123.0) == 3.0);
  CHECK(td_update_scalar(0.0, 0.5, 1.0, 0.9, 2.0) == doctest::Approx(1.4).epsilon(1e-15));
  for (double alpha : {0.1, 0.5, 1.0}) {
    CHECK(td_update_scalar(2.5, alpha, 2.5, 0.0, 9.0) == 2.5);
  }
}

TEST_CASE("td_targets") {
  Rng rng(4);
  const QNetwork target = QNetwork::init(3);
  std::vector<Transition> batch;
  for (int i = 0; i < 8; ++i) batch.push_back(random_transition(rng, 24, 4, i % 2 == 0));
  const auto y = td_targets(target, batch, 0.9);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (batch[i].done) {
      CHECK(y[i] == batch[i].reward);
    } else {
      const auto q = target.forward(batch[i].next_state);
      CHECK(y[i] == doctest::Approx(batch[i].reward + 0.9 * *std::max_element(q.begin(), q.end())));
    }
  }
}

TEST_CASE("train_batch") {
  SUBCASE("empty batch is skipped") {
    QNetwork net = QNetwork::init(1);
    const QNetwork before = net;
    const TrainResult r = train_batch(net, net, {}, 1e-3, 0.9);
    CHECK(r.skipped);
    CHECK(r.loss == 0.0);
    CHECK(net == before);
  }
  SUBCASE("zero error leaves parameters unchanged") {
    QNetwork net;  // Q(s)[a] == 0 everywhere
    const QNetwork before = net;
    const std::vector<Transition> batch{{std::vector<double>(24, 0.3), 2, 0.0,
                                         std::vector<double>(24, 0.3), true}};
    const TrainResult r = train_batch(net, net, batch, 0.1, 0.9);
    CHECK_FALSE(r.skipped);
    CHECK(r.loss == 0.0);
    CHECK(net == before);
  }
  SUBCASE("reported loss is the pre-step squared error") {
    QNetwork net = QNetwork::init(5);
    const std::vector<double> s(24, 0.4);
    const double q = net.forward(s)[1];
    const std::vector<Transition> batch{{s, 1, 5.0, s, true}};
    const TrainResult r = train_batch(net, net, batch, 1e-3, 0.9);
    CHECK(r.loss == doctest::Approx((q - 5.0) * (q - 5.0)).epsilon(1e-12));
    CHECK(std::abs(net.forward(s)[1] - 5.0) < std::abs(q - 5.0));
  }
  SUBCASE("only the taken action's output head moves") {
    QNetwork net = QNetwork::init(9, Architecture{24, {}, 4});
    const QNetwork before = net;
    const std::vector<double> s(24, 0.5);
    const std::vector<Transition> batch{{s, 3, 10.0, s, true}};
    train_batch(net, net, batch, 1e-2, 0.9);
    const DenseLayer& after = net.layers()[0];
    const DenseLayer& prior = before.layers()[0];
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 24; ++c) CHECK(after.weight(r, c) == prior.weight(r, c));
      CHECK(after.bias[r] == prior.bias[r]);
    }
    CHECK(after.bias[3] != prior.bias[3]);
  }
  SUBCASE("loss on a frozen terminal transition never increases") {
    QNetwork net = QNetwork::init(12);
    const std::vector<double> s(24, 0.25);
    const std::vector<Transition> batch{{s, 0, 7.0, s, true}};
    double previous = INFINITY;
    for (int step = 0; step < 100; ++step) {
      const TrainResult r = train_batch(net, net, batch, 1e-3, 0.9);
      REQUIRE(r.loss <= previous);
      previous = r.loss;
    }
    CHECK(previous < 49.0);
    CHECK(net.all_finite());
  }
}

TEST_CASE("analytic gradient matches central differences") {
  Rng rng(31);
  for (const Architecture& arch :
       {Architecture{24, {16}, 4}, Architecture{6, {5, 4}, 3}, Architecture{24, {64, 64}, 4}}) {
    QNetwork net = QNetwork::init(rng.next_u64(), arch);
    for (std::size_t i = 0; i < net.parameter_count(); ++i) {
      net.set_parameter(i, net.parameter(i) + rng.uniform(-0.1, 0.1));
    }
    const QNetwork target = QNetwork::init(rng.next_u64(), arch);
    std::vector<Transition> batch;
    for (int i = 0; i < 6; ++i) {
      batch.push_back(random_transition(rng, arch.inputs, arch.outputs, i % 3 == 0));
    }
    const auto y = td_targets(target, batch, 0.9);
    const LossGradient lg = loss_and_gradient(net, batch, y);
    CHECK(lg.loss == doctest::Approx(batch_loss(net, batch, y)).epsilon(1e-12));

    const double h = 1e-5;
    for (int k = 0; k < 100; ++k) {
      const std::size_t i = rng.index(net.parameter_count());
      QNetwork plus = net;
      QNetwork minus = net;
      plus.set_parameter(i, net.parameter(i) + h);
      minus.set_parameter(i, net.parameter(i) - h);
      const double numeric = (batch_loss(plus, batch, y) - batch_loss(minus, batch, y)) / (2 * h);
      CAPTURE(i);
      REQUIRE(ratsel::testing::close_rel(lg.gradient[i], numeric, 1e-4, 1e-7));
    }
  }
}

TEST_CASE("sync_target copies by value") {
  QNetwork online = QNetwork::init(2);
  const QNetwork target = sync_target(online);
  const std::vector<double> s(24, 0.6);
  CHECK(target.forward(s) == online.forward(s));
  online.set_parameter(0, online.parameter(0) + 1.0);
  online.layers()[2].bias[0] += 3.0;
  CHECK_FALSE(target == online);
  CHECK(target == QNetwork::init(2));
}

TEST_CASE("checkpoint text round-trips exactly") {
  QNetwork net = QNetwork::init(77);
  net.layers()[1].bias[3] = -0.1;
  std::stringstream buf;
  net.save(buf);
  const QNetwork loaded = QNetwork::load(buf);
  CHECK(loaded == net);

  std::stringstream small;
  QNetwork(Architecture{3, {2}, 1}).save(small);
  CHECK(small.str() == "ratsel-qnet 1\narch 3 2 1\nw 0 0 0 0 0 0\nb 0 0\nw 0 0\nb 0\n");

  std::stringstream bad("ratsel-qnet 1\narch 3 2 1\nw 0 0 0\n");
  CHECK_THROWS_AS(QNetwork::load(bad), ValidationError);
  std::stringstream wrong("hello\n");
  CHECK_THROWS_AS(QNetwork::load(wrong), ValidationError);
}
