#include "bincs/least_squares.h"

#include <cmath>

#include "bincs/error.h"

namespace bincs {
namespace {

constexpr double kRankTolerance = 1e-10;

}  // namespace

HouseholderQr::HouseholderQr(int rows)
    : rows_(rows), reflectors_(rows, 0), betas_(0), r_(0, 0) {}

void HouseholderQr::apply_qt(Eigen::VectorXd& v, int count) const {
  for (int i = 0; i < count; ++i) {
    const auto h = reflectors_.col(i).tail(rows_ - i);
    auto seg = v.tail(rows_ - i);
    seg.noalias() -= (betas_[i] * h.dot(seg)) * h;
  }
}

bool HouseholderQr::append(const Eigen::VectorXd& column) {
  if (cols_ >= rows_) return false;
  const double col_norm = column.norm();
  if (col_norm == 0.0) return false;

  Eigen::VectorXd w = column;
  apply_qt(w, cols_);
  const int j = cols_;
  auto tail = w.tail(rows_ - j);
  const double tail_norm = tail.norm();
  if (tail_norm <= kRankTolerance * col_norm) return false;

  const double alpha = tail[0] >= 0.0 ? -tail_norm : tail_norm;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(rows_);
  v.tail(rows_ - j) = tail;
  v[j] -= alpha;
  const double vnorm_sq = v.squaredNorm();

  if (reflectors_.cols() <= j) {
    const Eigen::Index grow = std::max<Eigen::Index>(8, 2 * reflectors_.cols());
    const Eigen::Index cap = std::min<Eigen::Index>(rows_, grow);
    reflectors_.conservativeResize(rows_, cap);
    betas_.conservativeResize(cap);
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(cap, cap);
    r.topLeftCorner(cols_, cols_) = r_.topLeftCorner(cols_, cols_);
    r_.swap(r);
  }
  reflectors_.col(j) = v;
  betas_[j] = 2.0 / vnorm_sq;
  r_.col(j).head(j) = w.head(j);
  r_(j, j) = alpha;
  ++cols_;
  return true;
}

Eigen::VectorXd HouseholderQr::solve(const Eigen::VectorXd& y) const {
  Eigen::VectorXd qty = y;
  apply_qt(qty, cols_);
  Eigen::VectorXd c = qty.head(cols_);
  for (int i = cols_ - 1; i >= 0; --i) {
    double sum = c[i];
    for (int k = i + 1; k < cols_; ++k) sum -= r_(i, k) * c[k];
    c[i] = sum / r_(i, i);
  }
  return c;
}

Eigen::VectorXd least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
  if (a.rows() != y.size()) {
    throw Error(ErrorCode::kInvalidArgument, "row count of A_S and y differ");
  }
  if (a.cols() > a.rows()) {
    throw Error(ErrorCode::kRankDeficient, "more columns than rows");
  }
  HouseholderQr qr(static_cast<int>(a.rows()));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (!qr.append(a.col(j))) {
      throw Error(ErrorCode::kRankDeficient,
                  "column " + std::to_string(j) + " is linearly dependent");
    }
  }
  return qr.solve(y);
}

}  // namespace bincs
