#include "bincs/spectral.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bincs/error.h"
#include "bincs/parallel.h"
#include "bincs/seed.h"

namespace bincs {
namespace {

double offdiag_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

double offdiag_max(const Eigen::MatrixXd& a) {
  double m = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) m = std::max(m, std::abs(a(i, j)));
  }
  return m;
}

// Zeroes a(p, q) with a symmetric two-sided rotation.
void rotate(Eigen::MatrixXd& a, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Eigen::Index n = a.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double arp = a(r, p);
    const double arq = a(r, q);
    a(r, p) = a(p, r) = c * arp - s * arq;
    a(r, q) = a(q, r) = s * arp + c * arq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;
}

int sample_count(int num_samples) {
  if (num_samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "num_samples must be >= 1");
  }
  return num_samples;
}

}  // namespace

EigenResult extreme_eigenvalues(const Eigen::MatrixXd& s, double tol, int max_sweeps) {
  if (s.rows() == 0 || s.rows() != s.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    throw Error(ErrorCode::kNotSymmetric, "matrix is not symmetric within tolerance");
  }

  Eigen::MatrixXd a = 0.5 * (s + s.transpose());
  const Eigen::Index n = a.rows();
  EigenResult result;
  while (true) {
    if (offdiag_max(a) < tol) {
      result.converged = true;
      break;
    }
    if (result.iterations == max_sweeps) break;
    result.offdiag_norm_history.push_back(offdiag_norm(a));
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, p, q);
    }
    ++result.iterations;
  }

  result.eigenvalues.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) result.eigenvalues[i] = a(i, i);
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  result.lambda_min = result.eigenvalues.front();
  result.lambda_max = result.eigenvalues.back();
  return result;
}

std::vector<int> sample_subset(int n, int k, std::mt19937_64& rng) {
  if (k < 0 || k > n) {
    throw Error(ErrorCode::kKTooLarge,
                "cannot draw " + std::to_string(k) + " of " + std::to_string(n));
  }
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

EigenBounds gram_eigen_bounds(int k, int degree, int max_overlap, int num_rows) {
  const double kk = k, d = degree, m = num_rows;
  const double s = std::max(1, max_overlap);
  EigenBounds b;
  b.lambda_max_upper = ((kk - 1.0) * s + d) / d;
  if (max_overlap <= 1) {
    b.kind = EigenBoundKind::kGirthAbove4;
    b.lambda_min_lower = 1.0 - kk / (2.0 * d);
  } else if (2 * degree <= num_rows) {
    b.kind = EigenBoundKind::kCoherenceLow;
    b.lambda_min_lower = 1.0 - s * kk / (2.0 * d);
  } else {
    b.kind = EigenBoundKind::kCoherenceHigh;
    b.lambda_min_lower = (kk * (2.0 * d - m - s) + 2.0 * (m - d)) / (2.0 * d);
  }
  return b;
}

EmpiricalRicReport empirical_ric(const SensingMatrix& a, int k, int num_samples,
                                 std::uint64_t seed, int threads) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (k > a.cols()) {
    throw Error(ErrorCode::kKTooLarge,
                "k = " + std::to_string(k) + " exceeds N = " + std::to_string(a.cols()));
  }
  const int samples = sample_count(num_samples);
  const CorrelationSpectrum spectrum = correlation_spectrum(a);

  EmpiricalRicReport report;
  report.k = k;
  report.num_samples = samples;
  report.seed = seed;
  report.bounds = gram_eigen_bounds(k, a.degree(), spectrum.max_overlap, a.rows());

  std::vector<double> lo(samples), hi(samples);
  parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    const GramSubmatrix gram = gram_submatrix(a, sample_subset(a.cols(), k, rng));
    const EigenResult eig = extreme_eigenvalues(gram.to_dense());
    lo[i] = eig.lambda_min;
    hi[i] = eig.lambda_max;
  });

  report.min_lambda_min = std::numeric_limits<double>::infinity();
  report.max_lambda_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    report.delta_hat = std::max({report.delta_hat, hi[i] - 1.0, 1.0 - lo[i]});
    report.min_lambda_min = std::min(report.min_lambda_min, lo[i]);
    report.max_lambda_max = std::max(report.max_lambda_max, hi[i]);
    if (lo[i] < report.bounds.lambda_min_lower - kBoundSlack ||
        hi[i] > report.bounds.lambda_max_upper + kBoundSlack) {
      ++report.bound_violations;
    }
  }
  return report;
}

OffdiagStats offdiag_proportion_stats(const SensingMatrix& a, int k, int num_samples,
                                      std::uint64_t seed, int threads) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "k must be >= 2");
  if (k > a.cols()) {
    throw Error(ErrorCode::kKTooLarge,
                "k = " + std::to_string(k) + " exceeds N = " + std::to_string(a.cols()));
  }
  const int samples = sample_count(num_samples);

  OffdiagStats stats;
  stats.k = k;
  stats.num_samples = samples;
  stats.seed = seed;
  stats.proportions.assign(samples, 0.0);
  const double pairs = static_cast<double>(k) * (k - 1) / 2.0;
  parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    const std::vector<int> t = sample_subset(a.cols(), k, rng);
    long long nonzero = 0;
    for (int x = 0; x < k; ++x) {
      for (int y = x + 1; y < k; ++y) {
        if (support_overlap(a, t[x], t[y]) > 0) ++nonzero;
      }
    }
    stats.proportions[i] = static_cast<double>(nonzero) / pairs;
  });

  stats.p_min = *std::min_element(stats.proportions.begin(), stats.proportions.end());
  stats.p_max = *std::max_element(stats.proportions.begin(), stats.proportions.end());
  double sum = 0.0;
  for (double p : stats.proportions) sum += p;
  stats.p_mean = sum / samples;
  return stats;
}

double concentration_fraction(const OffdiagStats& stats, double rho, double rel_tol) {
  if (stats.proportions.empty() || rho <= 0.0) return 0.0;
  long long inside = 0;
  for (double p : stats.proportions) {
    if (std::abs(p - rho) / rho <= rel_tol) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(stats.proportions.size());
}

}  // namespace bincs
