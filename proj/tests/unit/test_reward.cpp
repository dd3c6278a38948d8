#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "ratsel/reward.hpp"
#include "test_support.hpp"

using namespace ratsel;
using ratsel::testing::expanded_reward;

TEST_CASE("dynamic weights") {
  SUBCASE("zero metrics give the base weights") {
    const DynamicWeights w = dynamic_weights({});
    CHECK(w == DynamicWeights{4.0, 4.0, 2.5, 4.0, 3.0, 2.0});
  }
  SUBCASE("substitutions") {
    NetworkMetrics m;
    m.bandwidth = 100.0;
    m.packet_loss = 5.0;
    m.jitter = 10.0;
    m.load = 25.0;
    m.cost = 5.0;
    m.latency = 50.0;
    const DynamicWeights w = dynamic_weights(m);
    CHECK(w.bandwidth == 5.0);
    CHECK(w.packet_loss == 5.0);
    CHECK(w.jitter == 3.0);
    CHECK(w.load == 3.5);
    CHECK(w.cost == 2.5);
    CHECK(w.latency == 4.5);
  }
  SUBCASE("bases are minima for non-negative inputs") {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
      const DynamicWeights w = dynamic_weights(ratsel::testing::random_metrics(rng));
      REQUIRE(w.bandwidth >= 4.0);
      REQUIRE(w.latency >= 4.0);
      REQUIRE(w.jitter >= 2.5);
      REQUIRE(w.packet_loss >= 4.0);
      REQUIRE(w.load >= 3.0);
      REQUIRE(w.cost >= 2.0);
    }
  }
}

TEST_CASE("reward examples") {
  CHECK(reward({}) == 0.0);

  NetworkMetrics bw;
  bw.bandwidth = 100.0;
  CHECK(reward(bw) == 5.0);

  // Mid-range 5G: independent expansion gives 15.914125.
  const NetworkMetrics mid{275.0, 7.5, 3.0, 0.5, 30.0, 4.5};
  CHECK(expanded_reward(mid) == doctest::Approx(15.914125).epsilon(1e-12));
  CHECK(reward(mid) == doctest::Approx(15.914125).epsilon(1e-9));
}

TEST_CASE("reward matches the expanded polynomial") {
  Rng rng(17);
  for (int i = 0; i < 10000; ++i) {
    const NetworkMetrics m = ratsel::testing::random_metrics(rng, 500.0);
    REQUIRE(std::abs(reward(m) - expanded_reward(m)) <= 1e-11);
  }
}

TEST_CASE("breakdown terms compose the total") {
  Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const NetworkMetrics m = ratsel::testing::random_metrics(rng);
    const RewardBreakdown b = reward_breakdown(m);
    const double composed =
        b.terms[0] - b.terms[1] - b.terms[2] - b.terms[3] - b.terms[4] - b.terms[5];
    REQUIRE(b.total == composed);
    REQUIRE(b.total == reward(m));
    for (double t : b.terms) REQUIRE(t >= 0.0);
    const double magnitude = std::accumulate(b.terms.begin(), b.terms.end(), 0.0);
    REQUIRE(std::abs(b.total - expanded_reward(m)) <= 1e-12 * std::max(1.0, magnitude));
  }
}

TEST_CASE("reward is strictly monotone in each metric") {
  Rng rng(99);
  for (Metric metric : kAllMetrics) {
    CAPTURE(metric_key(metric));
    for (int i = 0; i < 2000; ++i) {
      const NetworkMetrics base = ratsel::testing::random_metrics(rng);
      NetworkMetrics bumped = base;
      bumped.set(metric, base.get(metric) + rng.uniform(1e-3, 50.0));
      if (metric == Metric::Bandwidth) {
        REQUIRE(reward(bumped) > reward(base));
      } else {
        REQUIRE(reward(bumped) < reward(base));
      }
    }
  }
}

namespace {

EnvState state_of(const std::array<NetworkMetrics, kRatCount>& metrics) {
  return EnvState::from_metrics(metrics);
}

}  // namespace

TEST_CASE("oracle_best") {
  SUBCASE("dominant 5G") {
    MetricsByRat m{};
    m[0] = {500, 5, 1, 0, 10, 1};
    m[1] = {50, 30, 15, 2, 70, 5};
    m[2] = {80, 50, 8, 5, 60, 4};
    m[3] = {200, 70, 20, 10, 80, 8};
    CHECK(oracle_best(state_of(m)) == RatId::FiveG);
  }
  SUBCASE("ties go to the lowest index") {
    MetricsByRat m{};
    m.fill({100, 10, 2, 1, 30, 3});
    CHECK(oracle_best(state_of(m)) == RatId::FiveG);
    m[0] = {10, 10, 2, 1, 30, 3};
    CHECK(oracle_best(state_of(m)) == RatId::FourG);
  }
  SUBCASE("matches an exhaustive comparison on random default states") {
    Rng rng(2024);
    const MetricRanges ranges = MetricRanges::defaults();
    for (int i = 0; i < 10000; ++i) {
      const EnvState s = sample_state(ranges, rng);
      std::size_t best = 0;
      double best_value = expanded_reward(s.metrics[0]);
      for (std::size_t r = 1; r < kRatCount; ++r) {
        const double v = expanded_reward(s.metrics[r]);
        if (v > best_value) {
          best_value = v;
          best = r;
        }
      }
      REQUIRE(index_of(oracle_best(s)) == best);
    }
  }
  SUBCASE("argmax does not depend on evaluation order") {
    Rng rng(8);
    const MetricRanges ranges = MetricRanges::defaults();
    for (int i = 0; i < 500; ++i) {
      const EnvState s = sample_state(ranges, rng);
      const auto values = rewards(s);
      std::array<std::size_t, kRatCount> perm{0, 1, 2, 3};
      do {
        std::size_t best = perm[0];
        for (std::size_t k = 1; k < kRatCount; ++k) {
          const std::size_t r = perm[k];
          if (values[r] > values[best] || (values[r] == values[best] && r < best)) best = r;
        }
        REQUIRE(best == index_of(oracle_best(s)));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}
