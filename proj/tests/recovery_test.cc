#include "bincs/recovery.h"

#include <random>

#include <gtest/gtest.h>

#include "bincs/construction.h"
#include "bincs/least_squares.h"
#include "bincs/spectral.h"
#include "oracles.h"
#include "test_util.h"

namespace bincs {
namespace {

using testing::error_code;

Eigen::MatrixXd random_orthogonal(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n * n; ++i) a.data()[i] = g(rng);
  Eigen::MatrixXd q(n, n);
  // Modified Gram-Schmidt, applied twice for orthogonality to rounding.
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd v = a.col(j);
    for (int i = 0; i < j; ++i) v -= q.col(i).dot(v) * q.col(i);
    for (int i = 0; i < j; ++i) v -= q.col(i).dot(v) * q.col(i);
    q.col(j) = v.normalized();
  }
  return q;
}

SparseSignal random_signal(int n, int k, std::mt19937_64& rng) {
  SparseSignal x;
  x.dimension = n;
  x.support = sample_subset(n, k, rng);
  std::normal_distribution<double> g;
  for (int i = 0; i < k; ++i) x.values.push_back(g(rng));
  return x;
}

const SensingMatrix& peg_matrix() {
  static const SensingMatrix a = peg_construct_with_girth(200, 400, 7, 6).matrix;
  return a;
}

double rel_error(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x) {
  return (x_hat - x).norm() / x.norm();
}

TEST(LeastSquares, Examples) {
  Eigen::MatrixXd a(3, 1);
  a << 1, 2, 2;
  EXPECT_NEAR(least_squares(a, 3 * a.col(0))[0], 3.0, 1e-14);

  const Eigen::MatrixXd q = random_orthogonal(6, 1).leftCols(3);
  Eigen::VectorXd y(6);
  y << 1, -2, 3, 0.5, 4, -1;
  EXPECT_LT((least_squares(q, y) - q.transpose() * y).norm(), 1e-12);
}

TEST(LeastSquares, NormalEquationsOracle) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    Eigen::MatrixXd a(20, 5);
    Eigen::VectorXd y(20);
    for (int i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
    for (int i = 0; i < 20; ++i) y[i] = g(rng);
    EXPECT_LT((least_squares(a, y) - testing::normal_equations(a, y)).norm(), 1e-8);
  }
}

TEST(LeastSquares, Errors) {
  Eigen::MatrixXd a(3, 2);
  a << 1, 2, 1, 2, 1, 2;
  EXPECT_EQ(error_code([&] { least_squares(a, Eigen::VectorXd::Ones(3)); }),
            ErrorCode::kRankDeficient);
  EXPECT_EQ(error_code([] { least_squares(Eigen::MatrixXd::Ones(2, 3), Eigen::VectorXd::Ones(2)); }),
            ErrorCode::kRankDeficient);
  EXPECT_EQ(error_code([] { least_squares(Eigen::MatrixXd::Ones(3, 1), Eigen::VectorXd::Ones(2)); }),
            ErrorCode::kInvalidArgument);
}

TEST(IncrementalQr, MatchesBatch) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(12, 6);
  for (int i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
  Eigen::VectorXd y(12);
  for (int i = 0; i < 12; ++i) y[i] = g(rng);
  HouseholderQr qr(12);
  for (int j = 0; j < 6; ++j) {
    ASSERT_TRUE(qr.append(a.col(j)));
    EXPECT_LT((qr.solve(y) - testing::normal_equations(a.leftCols(j + 1), y)).norm(), 1e-10);
  }
  EXPECT_FALSE(qr.append(a.col(0) + a.col(1)));
  EXPECT_EQ(qr.cols(), 6);
}

TEST(Signal, Validate) {
  SparseSignal x{5, {1, 3}, {1.0, -2.0}};
  EXPECT_NO_THROW(validate(x));
  EXPECT_EQ(x.dense(), (Eigen::VectorXd(5) << 0, 1, 0, -2, 0).finished());
  x.support = {3, 1};
  EXPECT_EQ(error_code([&] { validate(x); }), ErrorCode::kInvalidArgument);
  x.support = {1, 5};
  EXPECT_EQ(error_code([&] { validate(x); }), ErrorCode::kInvalidArgument);
  x.support = {1, 3};
  x.values = {0.0, 1.0};
  EXPECT_EQ(error_code([&] { validate(x); }), ErrorCode::kInvalidArgument);
}

TEST(Omp, SingleColumn) {
  const BinaryOperator a(peg_matrix());
  for (int i : {0, 17, 399}) {
    const RecoveryOutput out = omp(a, 2.0 * a.column(i), 1);
    Eigen::VectorXd expected = Eigen::VectorXd::Zero(400);
    expected[i] = 2.0;
    EXPECT_LT((out.x_hat - expected).norm(), 1e-12);
    EXPECT_EQ(out.iterations, 1);
    EXPECT_TRUE(out.converged);
  }
}

TEST(Omp, ExactlyKStopsAtK) {
  const BinaryOperator a(peg_matrix());
  std::mt19937_64 rng(1);
  const SparseSignal x = random_signal(400, 10, rng);
  OmpParams p;
  p.stop = OmpStop::kSparsity;
  const RecoveryOutput out = omp(a, a.apply(x.dense()), 10, p);
  EXPECT_EQ(out.iterations, 10);
  EXPECT_LE((out.x_hat.array() != 0).count(), 10);
  EXPECT_LT(rel_error(out.x_hat, x.dense()), 1e-9);
}

TEST(Omp, PegRecoversK40) {
  const BinaryOperator a(peg_matrix());
  int ok = 0;
  for (int t = 0; t < 200; ++t) {
    std::mt19937_64 rng(1000 + t);
    const SparseSignal x = random_signal(400, 40, rng);
    if (rel_error(omp(a, a.apply(x.dense()), 40).x_hat, x.dense()) <= 1e-6) ++ok;
  }
  EXPECT_GE(ok, 198);
}

TEST(Iht, ZeroMeasurements) {
  const BinaryOperator a(peg_matrix());
  const RecoveryOutput out = iht(a, Eigen::VectorXd::Zero(200), 5);
  EXPECT_EQ(out.x_hat, Eigen::VectorXd::Zero(400));
  EXPECT_EQ(out.iterations, 1);
}

TEST(Iht, OrthonormalExactInOneStep) {
  const DenseOperator a(random_orthogonal(30, 7));
  std::mt19937_64 rng(3);
  for (StepMode mode : {StepMode::kNormalized, StepMode::kAdaptive}) {
    const SparseSignal x = random_signal(30, 6, rng);
    IhtParams p;
    p.step_mode = mode;
    const RecoveryOutput out = iht(a, a.apply(x.dense()), 6, p);
    EXPECT_LT(rel_error(out.x_hat, x.dense()), 1e-12);
    EXPECT_EQ(out.iterations, 1);
  }
}

TEST(Iht, PegK40) {
  const BinaryOperator a(peg_matrix());
  int ok = 0;
  for (int t = 0; t < 200; ++t) {
    std::mt19937_64 rng(2000 + t);
    const SparseSignal x = random_signal(400, 40, rng);
    if (rel_error(iht(a, a.apply(x.dense()), 40).x_hat, x.dense()) <= 1e-4) ++ok;
  }
  EXPECT_GE(ok, 190);
}

TEST(Sp, OrthonormalExactInOneStep) {
  const DenseOperator a(random_orthogonal(30, 9));
  std::mt19937_64 rng(4);
  const SparseSignal x = random_signal(30, 6, rng);
  const RecoveryOutput out = sp(a, a.apply(x.dense()), 6);
  EXPECT_LT(rel_error(out.x_hat, x.dense()), 1e-12);
  EXPECT_EQ(out.iterations, 1);
}

TEST(Sp, PegK60) {
  const BinaryOperator a(peg_matrix());
  int ok = 0;
  for (int t = 0; t < 200; ++t) {
    std::mt19937_64 rng(3000 + t);
    const SparseSignal x = random_signal(400, 60, rng);
    if (rel_error(sp(a, a.apply(x.dense()), 60).x_hat, x.dense()) <= 1e-4) ++ok;
  }
  EXPECT_GE(ok, 196);
  EXPECT_EQ(error_code([&] { sp(a, Eigen::VectorXd::Zero(200), 101); }),
            ErrorCode::kInvalidArgument);
}

TEST(Bp, TrivialCases) {
  const BinaryOperator a(peg_matrix());
  EXPECT_LT(bp(a, Eigen::VectorXd::Zero(200)).x_hat.norm(), 1e-12);
  const RecoveryOutput out = bp(a, 1.5 * a.column(11));
  const RecoveryOutput greedy = omp(a, 1.5 * a.column(11), 1);
  EXPECT_LT((out.x_hat - greedy.x_hat).norm(), 1e-4);
  EXPECT_NEAR(out.x_hat[11], 1.5, 1e-4);
}

TEST(Bp, PegK40) {
  const BinaryOperator a(peg_matrix());
  int ok = 0;
  for (int t = 0; t < 100; ++t) {
    std::mt19937_64 rng(4000 + t);
    const SparseSignal x = random_signal(400, 40, rng);
    if (rel_error(bp(a, a.apply(x.dense())).x_hat, x.dense()) <= 1e-3) ++ok;
  }
  EXPECT_GE(ok, 98);
}

TEST(Recovery, ResidualIsRecomputed) {
  const BinaryOperator a(peg_matrix());
  std::mt19937_64 rng(5);
  const SparseSignal x = random_signal(400, 90, rng);
  const Eigen::VectorXd y = a.apply(x.dense());
  for (const RecoveryOutput& out :
       {omp(a, y, 90), iht(a, y, 90), sp(a, y, 90), bp(a, y)}) {
    EXPECT_NEAR(out.final_residual_norm, (y - a.apply(out.x_hat)).norm(), 1e-12);
  }
}

TEST(Recovery, DeterministicAndOperatorIndependent) {
  const BinaryOperator binary(peg_matrix());
  const DenseOperator dense(peg_matrix().dense());
  std::mt19937_64 rng(6);
  const SparseSignal x = random_signal(400, 30, rng);
  const Eigen::VectorXd y = binary.apply(x.dense());
  EXPECT_LT((y - dense.apply(x.dense())).norm(), 1e-12);
  EXPECT_EQ(omp(binary, y, 30).x_hat, omp(binary, y, 30).x_hat);
  EXPECT_EQ(iht(binary, y, 30).x_hat, iht(binary, y, 30).x_hat);
  EXPECT_LT((omp(binary, y, 30).x_hat - omp(dense, y, 30).x_hat).norm(), 1e-12);
  EXPECT_LT((sp(binary, y, 30).x_hat - sp(dense, y, 30).x_hat).norm(), 1e-12);
  EXPECT_LT((iht(binary, y, 30).x_hat - iht(dense, y, 30).x_hat).norm(), 1e-10);
  EXPECT_LT((bp(binary, y).x_hat - bp(dense, y).x_hat).norm(), 1e-9);
}

TEST(Recovery, InputErrors) {
  const BinaryOperator a(peg_matrix());
  EXPECT_EQ(error_code([&] { omp(a, Eigen::VectorXd::Zero(199), 3); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(error_code([&] { omp(a, Eigen::VectorXd::Zero(200), 0); }),
            ErrorCode::kInvalidArgument);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(200);
  y[0] = std::nan("");
  EXPECT_EQ(error_code([&] { iht(a, y, 3); }), ErrorCode::kInvalidArgument);
  BpParams p;
  p.penalty = 0;
  EXPECT_EQ(error_code([&] { bp(a, Eigen::VectorXd::Zero(200), p); }),
            ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace bincs
