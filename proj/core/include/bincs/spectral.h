#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "bincs/sensing_matrix.h"

namespace bincs {

struct EigenResult {
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  int iterations = 0;  // Jacobi sweeps performed
  bool converged = false;
  std::vector<double> eigenvalues;         // ascending
  std::vector<double> offdiag_norm_history;  // Frobenius norm before each sweep
};

// Cyclic Jacobi rotations on a copy of `s` until every off-diagonal entry is
// below tol in magnitude. Throws NotSymmetric when s differs from its
// transpose by more than tol (relative to its largest entry).
EigenResult extreme_eigenvalues(const Eigen::MatrixXd& s, double tol = 1e-12,
                                int max_sweeps = 50);

// Uniform k-subset of {0, ..., n-1} via a partial Fisher-Yates shuffle,
// returned sorted.
std::vector<int> sample_subset(int n, int k, std::mt19937_64& rng);

enum class EigenBoundKind {
  kGirthAbove4,    // lambda_min >= 1 - k/(2d), lambda_max <= (k + d - 1)/d
  kCoherenceLow,   // s >= 2, d <= M/2: 1 - sk/(2d), ((k-1)s + d)/d
  kCoherenceHigh,  // s >= 2, d > M/2:  (k(2d-M-s) + 2(M-d))/(2d), ((k-1)s + d)/d
};

struct EigenBounds {
  EigenBoundKind kind = EigenBoundKind::kGirthAbove4;
  double lambda_min_lower = 0.0;
  double lambda_max_upper = 0.0;
};

// Worst-case extreme-eigenvalue bounds for a k-column Gram block of a matrix
// with the given degree, maximum pair overlap s and row count.
EigenBounds gram_eigen_bounds(int k, int degree, int max_overlap, int num_rows);

struct EmpiricalRicReport {
  int k = 0;
  int num_samples = 0;
  std::uint64_t seed = 0;
  double delta_hat = 0.0;  // max over samples of max(lambda_max - 1, 1 - lambda_min)
  double min_lambda_min = 0.0;
  double max_lambda_max = 0.0;
  EigenBounds bounds;
  int bound_violations = 0;
};

inline constexpr double kBoundSlack = 1e-9;

// Samples num_samples uniform k-subsets T (sample i seeded from (seed, i)),
// takes the extreme eigenvalues of each A_T' A_T and counts breaches of
// gram_eigen_bounds (with kBoundSlack). Throws KTooLarge when k > N.
EmpiricalRicReport empirical_ric(const SensingMatrix& a, int k, int num_samples,
                                 std::uint64_t seed, int threads = 1);

struct OffdiagStats {
  int k = 0;
  int num_samples = 0;
  std::uint64_t seed = 0;
  double p_min = 0.0;
  double p_mean = 0.0;
  double p_max = 0.0;
  std::vector<double> proportions;  // per sample, in sample order
};

// Proportion of nonzero entries among the k(k-1) off-diagonal entries of
// sampled Gram blocks. Throws KTooLarge when k > N, InvalidArgument when k < 2.
OffdiagStats offdiag_proportion_stats(const SensingMatrix& a, int k, int num_samples,
                                      std::uint64_t seed, int threads = 1);

// Fraction of samples with |p - rho| / rho <= rel_tol.
double concentration_fraction(const OffdiagStats& stats, double rho, double rel_tol);

}  // namespace bincs
