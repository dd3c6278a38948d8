#include "ratsel/madm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ratsel/errors.hpp"

namespace ratsel::madm {

namespace {

constexpr double kWeightSumTolerance = 1e-9;
constexpr double kWpmFloor = 1e-9;

Ranking make_ranking(Method method, std::vector<double> scores) {
  Ranking r;
  r.method = method;
  r.order.resize(scores.size());
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&scores](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  r.scores = std::move(scores);
  return r;
}

struct ColumnExtent {
  double min;
  double max;
};

ColumnExtent column_extent(const DecisionMatrix& dm, std::size_t col) {
  ColumnExtent e{dm.at(0, col), dm.at(0, col)};
  for (std::size_t i = 1; i < dm.alternatives; ++i) {
    e.min = std::min(e.min, dm.at(i, col));
    e.max = std::max(e.max, dm.at(i, col));
  }
  return e;
}

std::vector<double> saw_scores(const DecisionMatrix& dm, std::span<const double> weights) {
  std::vector<double> scores(dm.alternatives, 0.0);
  for (std::size_t j = 0; j < dm.criteria; ++j) {
    const ColumnExtent e = column_extent(dm, j);
    const double span = e.max - e.min;
    for (std::size_t i = 0; i < dm.alternatives; ++i) {
      double normalized = 1.0;
      if (span > 0.0) {
        normalized = dm.kinds[j] == CriterionKind::Benefit ? (dm.at(i, j) - e.min) / span
                                                           : (e.max - dm.at(i, j)) / span;
      }
      scores[i] += weights[j] * normalized;
    }
  }
  return scores;
}

}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::Saw:
      return "saw";
    case Method::Wpm:
      return "wpm";
    case Method::Topsis:
      return "topsis";
    case Method::Ahp:
      return "ahp";
  }
  return "?";
}

void DecisionMatrix::validate() const {
  if (alternatives == 0 || criteria == 0) {
    throw DimensionError("decision matrix needs at least one alternative and one criterion");
  }
  if (values.size() != alternatives * criteria || kinds.size() != criteria ||
      weights.size() != criteria) {
    throw DimensionError("decision matrix shape mismatch");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw ValidationError("decision matrix contains a non-finite value");
    }
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ValidationError("criterion weights must be finite and non-negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw ValidationError("criterion weights must sum to 1, got " + std::to_string(sum));
  }
}

DecisionMatrix decision_matrix(const EnvState& state, std::span<const double> weights) {
  DecisionMatrix dm;
  dm.alternatives = kRatCount;
  dm.criteria = kMetricCount;
  dm.values.reserve(kRatCount * kMetricCount);
  for (RatId rat : kAllRats) {
    const auto row = state[rat].to_array();
    dm.values.insert(dm.values.end(), row.begin(), row.end());
  }
  dm.kinds.assign(kMetricCount, CriterionKind::Cost);
  dm.kinds[index_of(Metric::Bandwidth)] = CriterionKind::Benefit;
  dm.weights.assign(weights.begin(), weights.end());
  dm.validate();
  return dm;
}

std::array<double, kMetricCount> default_weights() {
  constexpr std::array<double, kMetricCount> base{4.0, 4.0, 2.5, 4.0, 3.0, 2.0};
  const double total = std::accumulate(base.begin(), base.end(), 0.0);
  std::array<double, kMetricCount> w{};
  std::transform(base.begin(), base.end(), w.begin(), [total](double b) { return b / total; });
  return w;
}

Ranking saw(const DecisionMatrix& dm) {
  dm.validate();
  return make_ranking(Method::Saw, saw_scores(dm, dm.weights));
}

Ranking wpm(const DecisionMatrix& dm) {
  dm.validate();
  std::vector<double> scores(dm.alternatives, 1.0);
  for (std::size_t j = 0; j < dm.criteria; ++j) {
    double lo = std::max(dm.at(0, j), kWpmFloor);
    double hi = lo;
    for (std::size_t i = 1; i < dm.alternatives; ++i) {
      const double v = std::max(dm.at(i, j), kWpmFloor);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (std::size_t i = 0; i < dm.alternatives; ++i) {
      const double v = std::max(dm.at(i, j), kWpmFloor);
      const double ratio = dm.kinds[j] == CriterionKind::Benefit ? v / hi : lo / v;
      scores[i] *= std::pow(ratio, dm.weights[j]);
    }
  }
  return make_ranking(Method::Wpm, std::move(scores));
}

Ranking topsis(const DecisionMatrix& dm) {
  dm.validate();
  const std::size_t n = dm.alternatives;
  const std::size_t m = dm.criteria;
  std::vector<double> weighted(n * m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      norm += dm.at(i, j) * dm.at(i, j);
    }
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) {
      weighted[i * m + j] = norm > 0.0 ? dm.weights[j] * dm.at(i, j) / norm : 0.0;
    }
  }

  std::vector<double> ideal(m);
  std::vector<double> anti_ideal(m);
  for (std::size_t j = 0; j < m; ++j) {
    double lo = weighted[j];
    double hi = weighted[j];
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, weighted[i * m + j]);
      hi = std::max(hi, weighted[i * m + j]);
    }
    const bool benefit = dm.kinds[j] == CriterionKind::Benefit;
    ideal[j] = benefit ? hi : lo;
    anti_ideal[j] = benefit ? lo : hi;
  }

  std::vector<double> closeness(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d_pos = 0.0;
    double d_neg = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double v = weighted[i * m + j];
      d_pos += (v - ideal[j]) * (v - ideal[j]);
      d_neg += (v - anti_ideal[j]) * (v - anti_ideal[j]);
    }
    d_pos = std::sqrt(d_pos);
    d_neg = std::sqrt(d_neg);
    const double total = d_pos + d_neg;
    closeness[i] = total > 0.0 ? d_neg / total : 0.5;
  }
  return make_ranking(Method::Topsis, std::move(closeness));
}

PairwiseMatrix PairwiseMatrix::ones(std::size_t n) { return {n, std::vector<double>(n * n, 1.0)}; }

PairwiseMatrix PairwiseMatrix::from_weights(std::span<const double> weights) {
  PairwiseMatrix p{weights.size(), std::vector<double>(weights.size() * weights.size())};
  for (std::size_t i = 0; i < p.size; ++i) {
    for (std::size_t j = 0; j < p.size; ++j) {
      p.values[i * p.size + j] = weights[i] / weights[j];
    }
  }
  return p;
}

void PairwiseMatrix::validate() const {
  if (size == 0 || values.size() != size * size) {
    throw ValidationError("pairwise matrix must be square and non-empty");
  }
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const double a = at(i, j);
      if (!std::isfinite(a) || a <= 0.0) {
        throw ValidationError("pairwise matrix entries must be positive and finite");
      }
      if (i == j && std::abs(a - 1.0) > 1e-9) {
        throw ValidationError("pairwise matrix diagonal must be 1");
      }
      if (std::abs(a * at(j, i) - 1.0) > 1e-9) {
        throw ValidationError("pairwise matrix is not reciprocal at (" + std::to_string(i) +
                              ", " + std::to_string(j) + ")");
      }
    }
  }
}

double random_index(std::size_t n) {
  static constexpr std::array<double, 11> kSaaty{0.0,  0.0,  0.0,  0.58, 0.90, 1.12,
                                                 1.24, 1.32, 1.41, 1.45, 1.49};
  if (n >= kSaaty.size()) {
    return kSaaty.back();
  }
  return kSaaty[n];
}

AhpWeights ahp_weights(const PairwiseMatrix& pairwise) {
  pairwise.validate();
  const std::size_t n = pairwise.size;
  AhpWeights out;
  out.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double log_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      log_sum += std::log(pairwise.at(i, j));
    }
    out.weights[i] = std::exp(log_sum / static_cast<double>(n));
  }
  const double total = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  for (double& w : out.weights) {
    w /= total;
  }

  double lambda = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += pairwise.at(i, j) * out.weights[j];
    }
    lambda += row / out.weights[i];
  }
  out.lambda_max = lambda / static_cast<double>(n);
  if (n > 2) {
    // Rounding can push lambda_max a hair below n for consistent matrices.
    out.consistency_index = std::max(0.0, (out.lambda_max - static_cast<double>(n)) /
                                              static_cast<double>(n - 1));
    out.consistency_ratio = out.consistency_index / random_index(n);
  }
  return out;
}

Ranking ahp_rank(const DecisionMatrix& dm, const PairwiseMatrix& pairwise) {
  const AhpWeights w = ahp_weights(pairwise);
  if (w.weights.size() != dm.criteria) {
    throw DimensionError("pairwise matrix size does not match criterion count");
  }
  DecisionMatrix weighted = dm;
  weighted.weights = w.weights;
  weighted.validate();
  return make_ranking(Method::Ahp, saw_scores(weighted, weighted.weights));
}

}  // namespace ratsel::madm
