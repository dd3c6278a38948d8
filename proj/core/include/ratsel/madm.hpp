#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ratsel/env_model.hpp"

namespace ratsel::madm {

enum class CriterionKind { Benefit, Cost };

enum class Method { Saw, Wpm, Topsis, Ahp };

std::string_view method_name(Method method);

/// Alternatives x criteria, row-major.
struct DecisionMatrix {
  std::size_t alternatives = 0;
  std::size_t criteria = 0;
  std::vector<double> values;
  std::vector<CriterionKind> kinds;
  std::vector<double> weights;  // non-negative, summing to 1

  double at(std::size_t alternative, std::size_t criterion) const {
    return values[alternative * criteria + criterion];
  }

  /// Throws DimensionError for shape mismatches and ValidationError for
  /// non-finite values or weights that are negative or do not sum to 1 (+-1e-9).
  void validate() const;
};

/// 4 x 6 matrix of raw metrics in (B, L, J, P, U, C) order; bandwidth is the
/// only benefit criterion.
DecisionMatrix decision_matrix(const EnvState& state, std::span<const double> weights);

/// Reward base weights (4, 4, 2.5, 4, 3, 2) normalized to sum to 1.
std::array<double, kMetricCount> default_weights();

struct Ranking {
  Method method = Method::Saw;
  std::vector<double> scores;
  std::vector<std::size_t> order;  // best first; equal scores keep index order

  std::size_t best() const { return order.front(); }
};

/// Min-max normalization, weighted sum. A constant column normalizes to 1.
Ranking saw(const DecisionMatrix& dm);

/// Ratio normalization (x / max for benefit, min / x for cost, values floored
/// at 1e-9), weighted product.
Ranking wpm(const DecisionMatrix& dm);

/// Vector normalization, weighting, relative closeness to the ideal point.
/// Closeness is 0.5 when an alternative sits on both ideals.
Ranking topsis(const DecisionMatrix& dm);

/// Square positive reciprocal matrix of pairwise criterion judgments.
struct PairwiseMatrix {
  std::size_t size = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t i, std::size_t j) const { return values[i * size + j]; }

  static PairwiseMatrix ones(std::size_t n);

  /// a_ij = w_i / w_j. Perfectly consistent.
  static PairwiseMatrix from_weights(std::span<const double> weights);

  /// Throws ValidationError unless square, positive, unit diagonal and
  /// reciprocal within 1e-9 relative.
  void validate() const;
};

struct AhpWeights {
  std::vector<double> weights;
  double lambda_max = 0.0;
  double consistency_index = 0.0;
  double consistency_ratio = 0.0;
};

/// Saaty's random consistency index for n criteria (0 for n <= 2).
double random_index(std::size_t n);

/// Row geometric means normalized to sum 1; lambda_max from the weighted-sum
/// estimate mean_i((A w)_i / w_i).
AhpWeights ahp_weights(const PairwiseMatrix& pairwise);

/// Criteria weights from `pairwise`, alternatives scored by SAW under them.
/// dm.weights is ignored.
Ranking ahp_rank(const DecisionMatrix& dm, const PairwiseMatrix& pairwise);

}  // namespace ratsel::madm
