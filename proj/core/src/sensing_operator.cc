#include "bincs/sensing_operator.h"

#include <cmath>

namespace bincs {

Eigen::VectorXd SensingOperator::apply_subset(std::span<const int> subset,
                                              const Eigen::VectorXd& coefficients) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(rows());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    add_column(subset[i], coefficients[static_cast<Eigen::Index>(i)], out);
  }
  return out;
}

Eigen::MatrixXd SensingOperator::columns(std::span<const int> subset) const {
  Eigen::MatrixXd out(rows(), static_cast<Eigen::Index>(subset.size()));
  for (std::size_t i = 0; i < subset.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = column(subset[i]);
  }
  return out;
}

BinaryOperator::BinaryOperator(SensingMatrix matrix)
    : matrix_(std::move(matrix)), amplitude_(matrix_.amplitude()) {}

Eigen::VectorXd BinaryOperator::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(rows());
  for (int j = 0; j < cols(); ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    for (int r : matrix_.support(j)) y[r] += xj;
  }
  return y * amplitude_;
}

Eigen::VectorXd BinaryOperator::apply_transpose(const Eigen::VectorXd& r) const {
  Eigen::VectorXd out(cols());
  for (int j = 0; j < cols(); ++j) {
    double sum = 0.0;
    for (int row : matrix_.support(j)) sum += r[row];
    out[j] = sum * amplitude_;
  }
  return out;
}

Eigen::VectorXd BinaryOperator::column(int j) const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(rows());
  for (int r : matrix_.support(j)) c[r] = amplitude_;
  return c;
}

void BinaryOperator::add_column(int j, double scale, Eigen::VectorXd& out) const {
  const double v = scale * amplitude_;
  for (int r : matrix_.support(j)) out[r] += v;
}

double estimate_spectral_norm(const SensingOperator& a, int iterations) {
  Eigen::VectorXd v(a.cols());
  // Deterministic start with a small index-dependent tilt so it is not
  // orthogonal to the dominant singular vector by symmetry.
  for (int j = 0; j < a.cols(); ++j) v[j] = 1.0 + 1e-3 * std::sin(1.0 + j);
  v.normalize();
  double sigma_sq = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd w = a.apply_transpose(a.apply(v));
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    sigma_sq = v.dot(w);
    v = w / norm;
  }
  return std::sqrt(std::max(0.0, sigma_sq));
}

}  // namespace bincs
