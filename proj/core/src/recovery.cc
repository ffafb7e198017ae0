#include "bincs/recovery.h"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "bincs/error.h"
#include "bincs/least_squares.h"

namespace bincs {
namespace {

constexpr double kZeroResidual = 1e-14;

void check_measurements(const SensingOperator& a, const Eigen::VectorXd& y) {
  if (y.size() != a.rows()) {
    throw Error(ErrorCode::kInvalidArgument,
                "y has " + std::to_string(y.size()) + " entries, A has " +
                    std::to_string(a.rows()) + " rows");
  }
  if (!y.allFinite()) throw Error(ErrorCode::kInvalidArgument, "y is not finite");
}

void check_sparsity(const SensingOperator& a, int k) {
  if (k < 1 || k > a.rows() || k > a.cols()) {
    throw Error(ErrorCode::kInvalidArgument,
                "sparsity " + std::to_string(k) + " outside [1, min(M, N)]");
  }
}

RecoveryOutput finish(const SensingOperator& a, const Eigen::VectorXd& y,
                      Eigen::VectorXd x_hat, int iterations, bool converged) {
  RecoveryOutput out;
  out.final_residual_norm = (y - a.apply(x_hat)).norm();
  out.x_hat = std::move(x_hat);
  out.iterations = iterations;
  out.converged = converged;
  return out;
}

// Indices of the k largest |v| entries; ties go to the lower index. Sorted.
std::vector<int> top_k(const Eigen::VectorXd& v, int k) {
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  const auto mid = idx.begin() + std::min<Eigen::Index>(k, v.size());
  std::partial_sort(idx.begin(), mid, idx.end(), [&](int i, int j) {
    const double ai = std::abs(v[i]), aj = std::abs(v[j]);
    return ai != aj ? ai > aj : i < j;
  });
  idx.erase(mid, idx.end());
  std::sort(idx.begin(), idx.end());
  return idx;
}

Eigen::VectorXd hard_threshold(const Eigen::VectorXd& v, int k) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (int i : top_k(v, k)) out[i] = v[i];
  return out;
}

Eigen::VectorXd solve_on(const SensingOperator& a, std::span<const int> subset,
                         const Eigen::VectorXd& y) {
  return least_squares(a.columns(subset), y);
}

Eigen::VectorXd scatter(int n, std::span<const int> subset, const Eigen::VectorXd& c) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    x[subset[i]] = c[static_cast<Eigen::Index>(i)];
  }
  return x;
}

}  // namespace

Eigen::VectorXd SparseSignal::dense() const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dimension);
  for (std::size_t i = 0; i < support.size(); ++i) x[support[i]] = values[i];
  return x;
}

void validate(const SparseSignal& x) {
  if (x.support.size() != x.values.size()) {
    throw Error(ErrorCode::kInvalidArgument, "support and values differ in length");
  }
  for (std::size_t i = 0; i < x.support.size(); ++i) {
    if (x.support[i] < 0 || x.support[i] >= x.dimension ||
        (i > 0 && x.support[i] <= x.support[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "support must be sorted and in range");
    }
    if (!std::isfinite(x.values[i]) || x.values[i] == 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "signal values must be finite and nonzero");
    }
  }
}

RecoveryOutput omp(const SensingOperator& a, const Eigen::VectorXd& y, int k,
                   const OmpParams& params) {
  check_measurements(a, y);
  check_sparsity(a, k);
  int limit = k;
  double stop_norm = kZeroResidual * std::max(1.0, y.norm());
  if (params.stop == OmpStop::kResidual) {
    limit = params.max_iters > 0 ? params.max_iters : a.rows() / 2;
    limit = std::min({std::max(limit, k), a.rows(), a.cols()});
    stop_norm = std::max(stop_norm, params.residual_tolerance * y.norm());
  }

  std::vector<int> selected;
  std::vector<char> used(a.cols(), 0);
  HouseholderQr qr(a.rows());
  Eigen::VectorXd coef;
  Eigen::VectorXd residual = y;

  int it = 0;
  for (; it < limit; ++it) {
    if (residual.norm() <= stop_norm) break;
    const Eigen::VectorXd corr = a.apply_transpose(residual);
    int best = -1;
    double best_abs = -1.0;
    for (int j = 0; j < a.cols(); ++j) {
      if (used[j]) continue;
      const double c = std::abs(corr[j]);
      if (c > best_abs) {
        best_abs = c;
        best = j;
      }
    }
    if (!qr.append(a.column(best))) {
      throw Error(ErrorCode::kRankDeficient,
                  "OMP selected column " + std::to_string(best) +
                      " inside the current span");
    }
    used[best] = 1;
    selected.push_back(best);
    coef = qr.solve(y);
    residual = y - a.apply_subset(selected, coef);
  }

  Eigen::VectorXd x_hat = Eigen::VectorXd::Zero(a.cols());
  for (std::size_t i = 0; i < selected.size(); ++i) {
    x_hat[selected[i]] = coef[static_cast<Eigen::Index>(i)];
  }
  const bool converged = params.stop == OmpStop::kSparsity || residual.norm() <= stop_norm;
  return finish(a, y, std::move(x_hat), it, converged);
}

RecoveryOutput iht(const SensingOperator& a, const Eigen::VectorXd& y, int k,
                   const IhtParams& params) {
  check_measurements(a, y);
  check_sparsity(a, k);
  if (params.max_iters < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_iters must be >= 1");
  }

  double fixed_step = 1.0;
  if (params.step_mode == StepMode::kNormalized) {
    const double sigma = params.spectral_norm > 0.0 ? params.spectral_norm
                                                    : estimate_spectral_norm(a);
    if (sigma > 0.0) fixed_step = 1.0 / (sigma * sigma);
  }

  const double y_norm = y.norm();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(a.cols());
  Eigen::VectorXd residual = y;
  double prev_norm = y_norm;
  std::vector<int> support;

  for (int it = 1; it <= params.max_iters; ++it) {
    const Eigen::VectorXd grad = a.apply_transpose(residual);
    Eigen::VectorXd next;
    if (params.step_mode == StepMode::kNormalized) {
      next = hard_threshold(x + fixed_step * grad, k);
    } else {
      // Step sized for the gradient restricted to the current support (or to
      // the k largest gradient entries on the first pass).
      const std::vector<int> active = support.empty() ? top_k(grad, k) : support;
      Eigen::VectorXd g_active = Eigen::VectorXd::Zero(a.cols());
      for (int i : active) g_active[i] = grad[i];
      const double g_sq = g_active.squaredNorm();
      const double ag_sq = a.apply(g_active).squaredNorm();
      double step = (g_sq > 0.0 && ag_sq > 0.0) ? g_sq / ag_sq : 1.0;
      next = hard_threshold(x + step * grad, k);
      // Backtrack while the support changes and the step is too long for
      // the move actually taken.
      for (int shrink = 0; shrink < 50; ++shrink) {
        if (top_k(next, k) == active) break;
        const Eigen::VectorXd move = next - x;
        const double move_sq = move.squaredNorm();
        const double a_move_sq = a.apply(move).squaredNorm();
        if (a_move_sq == 0.0 || step <= 0.99 * move_sq / a_move_sq) break;
        step /= 2.0;
        next = hard_threshold(x + step * grad, k);
      }
    }

    x = std::move(next);
    support = top_k(x, k);
    residual = y - a.apply(x);
    const double norm = residual.norm();
    if (norm <= kZeroResidual * std::max(1.0, y_norm)) {
      return finish(a, y, std::move(x), it, true);
    }
    if (std::abs(prev_norm - norm) <= params.stall_tolerance * prev_norm) {
      return finish(a, y, std::move(x), it, true);
    }
    prev_norm = norm;
  }
  return finish(a, y, std::move(x), params.max_iters, false);
}

RecoveryOutput sp(const SensingOperator& a, const Eigen::VectorXd& y, int k,
                  const SpParams& params) {
  check_measurements(a, y);
  check_sparsity(a, k);
  if (2 * k > a.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "subspace pursuit needs 2k <= M");
  }
  if (params.max_iters < 1) throw Error(ErrorCode::kInvalidArgument, "max_iters must be >= 1");
  const int n = a.cols();
  const double y_norm = y.norm();

  std::vector<int> support = top_k(a.apply_transpose(y), k);
  Eigen::VectorXd coef = solve_on(a, support, y);
  Eigen::VectorXd residual = y - a.apply_subset(support, coef);
  double res_norm = residual.norm();

  // The initial identification counts as the first iteration.
  int it = 1;
  bool converged = false;
  while (true) {
    if (res_norm <= kZeroResidual * std::max(1.0, y_norm)) {
      converged = true;
      break;
    }
    if (it >= params.max_iters) break;
    ++it;
    std::vector<int> merged = top_k(a.apply_transpose(residual), k);
    merged.insert(merged.end(), support.begin(), support.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    const Eigen::VectorXd wide = solve_on(a, merged, y);
    std::vector<int> pruned;
    for (int pos : top_k(wide, k)) pruned.push_back(merged[pos]);
    const Eigen::VectorXd next_coef = solve_on(a, pruned, y);
    const Eigen::VectorXd next_residual = y - a.apply_subset(pruned, next_coef);
    const double next_norm = next_residual.norm();
    if (next_norm >= res_norm) {
      converged = true;
      break;
    }
    support = std::move(pruned);
    coef = next_coef;
    residual = next_residual;
    res_norm = next_norm;
  }
  return finish(a, y, scatter(n, support, coef), it, converged);
}

namespace {

// Projection onto {x : A x = y}: x = v - A' (A A')^+ (A v - y). Uses a
// Cholesky factor when A A' is positive definite and an eigendecomposition
// pseudo-inverse otherwise (rows of A may be empty or dependent).
class AffineProjector {
 public:
  explicit AffineProjector(const SensingOperator& a) : a_(a) {
    const Eigen::MatrixXd dense = a.dense();
    const Eigen::MatrixXd gram = dense * dense.transpose();
    llt_.compute(gram);
    use_llt_ = llt_.info() == Eigen::Success &&
               llt_.matrixL().toDenseMatrix().diagonal().minCoeff() >
                   1e-10 * std::sqrt(gram.diagonal().maxCoeff());
    if (!use_llt_) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
      const Eigen::VectorXd& ev = eig.eigenvalues();
      const double cutoff = 1e-10 * std::max(1.0, ev.cwiseAbs().maxCoeff());
      Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] > cutoff) inv[i] = 1.0 / ev[i];
      }
      pinv_ = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
    }
  }

  Eigen::VectorXd project(const Eigen::VectorXd& v, const Eigen::VectorXd& y) const {
    const Eigen::VectorXd gap = a_.apply(v) - y;
    const Eigen::VectorXd w = use_llt_ ? Eigen::VectorXd(llt_.solve(gap))
                                       : Eigen::VectorXd(pinv_ * gap);
    return v - a_.apply_transpose(w);
  }

 private:
  const SensingOperator& a_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  bool use_llt_ = false;
  Eigen::MatrixXd pinv_;
};

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double t) {
  return v.unaryExpr([t](double x) {
    return x > t ? x - t : (x < -t ? x + t : 0.0);
  });
}

}  // namespace

RecoveryOutput bp(const SensingOperator& a, const Eigen::VectorXd& y,
                  const BpParams& params) {
  check_measurements(a, y);
  if (params.penalty <= 0.0 || params.tolerance <= 0.0 || params.max_iters < 1) {
    throw Error(ErrorCode::kInvalidArgument, "invalid basis pursuit parameters");
  }
  const int n = a.cols();
  const AffineProjector projector(a);
  const double rho = params.penalty;
  const double alpha = params.over_relaxation;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  for (int it = 1; it <= params.max_iters; ++it) {
    x = projector.project(z - u, y);
    const Eigen::VectorXd x_relaxed = alpha * x + (1.0 - alpha) * z;
    const Eigen::VectorXd z_old = z;
    z = soft_threshold(x_relaxed + u, 1.0 / rho);
    u += x_relaxed - z;

    const double primal = (x - z).norm();
    const double dual = rho * (z - z_old).norm();
    const double primal_scale = std::max({1.0, x.norm(), z.norm()});
    const double dual_scale = std::max(1.0, rho * u.norm());
    if (primal <= params.tolerance * primal_scale &&
        dual <= params.tolerance * dual_scale) {
      return finish(a, y, std::move(x), it, true);
    }
  }
  return finish(a, y, std::move(x), params.max_iters, false);
}

}  // namespace bincs
