#pragma once

#include <memory>
#include <span>

#include <Eigen/Core>

#include "bincs/sensing_matrix.h"

namespace bincs {

// Column-access contract shared by the recovery solvers. Binary matrices go
// through their supports (scaled by 1/sqrt(d)); dense matrices through Eigen.
class SensingOperator {
 public:
  virtual ~SensingOperator() = default;

  virtual int rows() const = 0;
  virtual int cols() const = 0;

  // y = A x
  virtual Eigen::VectorXd apply(const Eigen::VectorXd& x) const = 0;
  // A' r
  virtual Eigen::VectorXd apply_transpose(const Eigen::VectorXd& r) const = 0;
  virtual Eigen::VectorXd column(int j) const = 0;
  // out += scale * a_j
  virtual void add_column(int j, double scale, Eigen::VectorXd& out) const = 0;
  virtual Eigen::MatrixXd dense() const = 0;

  // A_S c for a column subset S.
  Eigen::VectorXd apply_subset(std::span<const int> subset,
                               const Eigen::VectorXd& coefficients) const;
  Eigen::MatrixXd columns(std::span<const int> subset) const;
};

class BinaryOperator final : public SensingOperator {
 public:
  explicit BinaryOperator(SensingMatrix matrix);

  int rows() const override { return matrix_.rows(); }
  int cols() const override { return matrix_.cols(); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& r) const override;
  Eigen::VectorXd column(int j) const override;
  void add_column(int j, double scale, Eigen::VectorXd& out) const override;
  Eigen::MatrixXd dense() const override { return matrix_.dense(); }

  const SensingMatrix& matrix() const { return matrix_; }

 private:
  SensingMatrix matrix_;
  double amplitude_;
};

class DenseOperator final : public SensingOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {}

  int rows() const override { return static_cast<int>(matrix_.rows()); }
  int cols() const override { return static_cast<int>(matrix_.cols()); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const override { return matrix_ * x; }
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& r) const override {
    return matrix_.transpose() * r;
  }
  Eigen::VectorXd column(int j) const override { return matrix_.col(j); }
  void add_column(int j, double scale, Eigen::VectorXd& out) const override {
    out.noalias() += scale * matrix_.col(j);
  }
  Eigen::MatrixXd dense() const override { return matrix_; }

 private:
  Eigen::MatrixXd matrix_;
};

// Largest singular value of A by power iteration on A'A from a fixed start.
double estimate_spectral_norm(const SensingOperator& a, int iterations = 100);

}  // namespace bincs
