#pragma once

#include <vector>

#include <Eigen/Core>

#include "bincs/sensing_operator.h"

namespace bincs {

struct SparseSignal {
  int dimension = 0;
  std::vector<int> support;    // sorted
  std::vector<double> values;  // aligned with support

  int sparsity() const { return static_cast<int>(support.size()); }
  Eigen::VectorXd dense() const;
};

// Throws InvalidArgument if the support is unsorted, out of range, or a
// value is zero or non-finite.
void validate(const SparseSignal& x);

struct RecoveryOutput {
  Eigen::VectorXd x_hat;
  int iterations = 0;
  double final_residual_norm = 0.0;  // ||y - A x_hat||_2, recomputed
  bool converged = false;
};

enum class OmpStop {
  kSparsity,  // exactly k selections
  kResidual,  // until ||r|| <= residual_tolerance * ||y|| or max_iters
};

struct OmpParams {
  OmpStop stop = OmpStop::kResidual;
  double residual_tolerance = 1e-9;
  // Cap for kResidual; <= 0 means floor(M / 2).
  int max_iters = 0;
};

// Orthogonal matching pursuit: greedy selections (ties to the lowest index),
// re-projecting y onto the selected span after each. x_hat is supported on
// the selected set, which may exceed k under OmpStop::kResidual.
RecoveryOutput omp(const SensingOperator& a, const Eigen::VectorXd& y, int k,
                   const OmpParams& params = {});

enum class StepMode {
  kNormalized,  // fixed eta = 1 / sigma_max(A)^2
  kAdaptive,    // per-iteration eta from the current support, with backtracking
};

struct IhtParams {
  int max_iters = 1000;
  StepMode step_mode = StepMode::kAdaptive;
  // sigma_max(A); estimated by power iteration when <= 0.
  double spectral_norm = 0.0;
  double stall_tolerance = 1e-6;
};

// Iterative hard thresholding x <- H_k(x + eta A'(y - A x)) from x = 0.
RecoveryOutput iht(const SensingOperator& a, const Eigen::VectorXd& y, int k,
                   const IhtParams& params = {});

struct SpParams {
  int max_iters = 100;
};

// Subspace pursuit. Requires 2k <= M.
RecoveryOutput sp(const SensingOperator& a, const Eigen::VectorXd& y, int k,
                  const SpParams& params = {});

struct BpParams {
  double penalty = 1.0;       // ADMM rho
  double over_relaxation = 1.0;
  double tolerance = 1e-6;
  int max_iters = 2000;
};

// Basis pursuit min ||x||_1 s.t. A x = y by ADMM. The affine projection uses
// a factorization of A A' computed once per call.
RecoveryOutput bp(const SensingOperator& a, const Eigen::VectorXd& y,
                  const BpParams& params = {});

}  // namespace bincs
