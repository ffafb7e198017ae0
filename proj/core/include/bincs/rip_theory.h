#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bincs/rational.h"

namespace bincs {

// Largest sparsity k with k < (1 + 1/mu) / 2. Returns nullopt (unbounded)
// for mu == 0; throws InvalidArgument unless 0 <= mu <= 1.
std::optional<std::int64_t> coherence_k_bound(const Rational& mu);

// Probability that two distinct columns of a girth > 4 matrix A(M, N, d)
// overlap: (N d^2 - M d) / ((N - 1) M). Throws InfeasibleParameters when
// the value leaves [0, 1].
Rational overlap_probability(int num_rows, int num_cols, int degree);

// Probability that two independent uniform d-subsets of M rows share exactly
// s rows, evaluated from the factorial form
//   d! d! (M-d)! (M-d)! / ((d-s)! (d-s)! s! (M-2d+s)! M!).
// Zero when M - 2d + s < 0. Throws InvalidArgument unless 0 <= s <= d <= M.
Rational random_overlap_pmf(int num_rows, int degree, int overlap);

enum class RicFormula { kGirthAbove4, kLargeK, kGirth4Low, kGirth4High };
std::string to_string(RicFormula f);

struct RicCondition {
  std::string description;
  bool satisfied = false;
};

struct RicFormulaResult {
  RicFormula formula = RicFormula::kGirthAbove4;
  std::optional<Rational> exact;  // absent for the large-k form
  double delta_k = 0.0;
  int k = 0;
  int degree = 0;
  std::optional<int> overlap;   // s (girth-4 forms)
  std::optional<int> num_rows;  // M (girth-4 forms)
  std::optional<double> rho;    // large-k form
  std::vector<RicCondition> validity;
};

// RIC of a girth > 4 matrix: (3k - 2) / (4d + k - 2). Requires k >= 1, d >= 2.
RicFormulaResult ric_girth_above4(int k, int degree);

// Large-|T| approximation for girth > 4 matrices:
//   (k rho + 2 sqrt(k rho (1 - rho)) + 1) / (k rho - 2 sqrt(k rho (1 - rho)) + 2d + 1).
// Throws SideConditionViolated when k (k - 1) rho < 2 and InvalidArgument
// unless 0 < rho < 1 and the denominator is positive.
RicFormulaResult ric_large_k(int k, int degree, double rho);

// RIC of a girth-4 matrix with coherence s/d.
//   LOW  (3 <= d <= M/2, 2 <= s <= d-1):       (3k-2)s / ((k-2)s + 4d)
//   HIGH (M/2 < d <= M-2, max(2,2d-M) <= s <= d-1):
//        ((3k-2)s + (k-2)(M-2d)) / ((k-2)s - (M-2d)k + 2M)
// Throws ParameterOutOfBranch when neither branch applies.
RicFormulaResult ric_girth4(int k, int degree, int overlap, int num_rows);

enum class DominanceVerdict { kNearOptimalBetter, kConditionFails };
enum class DominanceCondition {
  kDegreeAtMostDmax,  // d <= d_max: the near-optimal matrix is best outright
  kLowDegree,         // d_max < d <= M/2:   d_max >= d / s
  kHighDegree,        // M/2 < d <= M-2:     d_max >= (k+1)(2d-M) / (6s + 2(2d-M))
};

struct DominanceResult {
  DominanceVerdict verdict = DominanceVerdict::kNearOptimalBetter;
  DominanceCondition condition = DominanceCondition::kDegreeAtMostDmax;
  Rational lhs;        // d_max
  Rational threshold;  // right-hand side of the applied inequality
};

// Compares the near-optimal A(M, N, d_max) against girth-4 matrices of degree
// d and coherence s/d. k only matters for the high-degree condition. Throws
// InvalidRange when d > M - 2.
DominanceResult near_optimal_dominates(int d_max, int degree, int overlap,
                                   int num_rows, int k);

}  // namespace bincs
