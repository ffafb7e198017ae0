#pragma once

#include <Eigen/Core>

namespace bincs {

// Householder QR that grows one column at a time, so greedy solvers can
// extend their active set without refactoring.
class HouseholderQr {
 public:
  explicit HouseholderQr(int rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  // Appends a column. Returns false (leaving the factorization untouched)
  // when the column is numerically inside the current span.
  bool append(const Eigen::VectorXd& column);

  // argmin_c || y - A_S c ||_2 over the appended columns.
  Eigen::VectorXd solve(const Eigen::VectorXd& y) const;

 private:
  void apply_qt(Eigen::VectorXd& v, int count) const;

  int rows_;
  int cols_ = 0;
  Eigen::MatrixXd reflectors_;  // column i holds v_i, zero above row i
  Eigen::VectorXd betas_;
  Eigen::MatrixXd r_;           // upper triangular, cols_ x cols_ used
};

// Least-squares coefficients of y on the columns of a (|S| <= M). Throws
// RankDeficient when the columns are linearly dependent.
Eigen::VectorXd least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& y);

}  // namespace bincs
