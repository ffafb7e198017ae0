#include "bincs/sensing_matrix.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bincs/error.h"

namespace bincs {

double SensingMatrix::amplitude() const {
  return degree_ > 0 ? 1.0 / std::sqrt(static_cast<double>(degree_)) : 0.0;
}

std::vector<Support> SensingMatrix::supports() const {
  std::vector<Support> out(cols_);
  for (int j = 0; j < cols_; ++j) {
    auto s = support(j);
    out[j].assign(s.begin(), s.end());
  }
  return out;
}

std::vector<int> SensingMatrix::row_degrees() const {
  std::vector<int> deg(rows_, 0);
  for (int r : indices_) ++deg[r];
  return deg;
}

BipartiteGraph SensingMatrix::graph() const {
  const std::vector<Support> s = supports();
  return build_graph(rows_, cols_, s);
}

Eigen::MatrixXd SensingMatrix::dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows_, cols_);
  const double amp = amplitude();
  for (int j = 0; j < cols_; ++j) {
    for (int r : support(j)) out(r, j) = amp;
  }
  return out;
}

SensingMatrix from_supports(int num_rows, int num_cols, int degree,
                            std::vector<Support> supports) {
  if (num_rows < 1 || num_cols < 1) {
    throw Error(ErrorCode::kInvalidArgument, "matrix must be at least 1 x 1");
  }
  if (degree < 1 || degree > num_rows) {
    throw Error(ErrorCode::kInvalidArgument,
                "degree " + std::to_string(degree) + " outside [1, M]");
  }
  if (static_cast<int>(supports.size()) != num_cols) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected " + std::to_string(num_cols) + " supports, got " +
                    std::to_string(supports.size()));
  }

  SensingMatrix a;
  a.rows_ = num_rows;
  a.cols_ = num_cols;
  a.degree_ = degree;
  a.indices_.reserve(static_cast<std::size_t>(num_cols) * degree);
  for (int j = 0; j < num_cols; ++j) {
    Support& s = supports[j];
    std::sort(s.begin(), s.end());
    const bool distinct = std::adjacent_find(s.begin(), s.end()) == s.end();
    if (static_cast<int>(s.size()) != degree || !distinct) {
      throw Error(ErrorCode::kIrregularColumn,
                  "column " + std::to_string(j) + " does not hold " +
                      std::to_string(degree) + " distinct rows");
    }
    for (int r : s) {
      if (r < 0 || r >= num_rows) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    "row " + std::to_string(r) + " in column " +
                        std::to_string(j) + " outside [0, " +
                        std::to_string(num_rows) + ")");
      }
    }
    a.indices_.insert(a.indices_.end(), s.begin(), s.end());
  }

  std::vector<int> order(num_cols);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](int x, int y) {
    auto sx = a.support(x), sy = a.support(y);
    return std::lexicographical_compare(sx.begin(), sx.end(), sy.begin(), sy.end());
  };
  std::sort(order.begin(), order.end(), less);
  for (int i = 1; i < num_cols; ++i) {
    auto s0 = a.support(order[i - 1]), s1 = a.support(order[i]);
    if (std::equal(s0.begin(), s0.end(), s1.begin(), s1.end())) {
      const int lo = std::min(order[i - 1], order[i]);
      const int hi = std::max(order[i - 1], order[i]);
      throw Error(ErrorCode::kDuplicateColumn,
                  "columns " + std::to_string(lo) + " and " +
                      std::to_string(hi) + " are identical");
    }
  }
  return a;
}

int support_overlap(const SensingMatrix& a, int i, int j) {
  auto si = a.support(i), sj = a.support(j);
  int count = 0;
  auto p = si.begin(), q = sj.begin();
  while (p != si.end() && q != sj.end()) {
    if (*p < *q) {
      ++p;
    } else if (*q < *p) {
      ++q;
    } else {
      ++count;
      ++p;
      ++q;
    }
  }
  return count;
}

Rational CorrelationSpectrum::coherence() const {
  if (degree == 0) return Rational(0);
  return make_rational(max_overlap, degree);
}

std::int64_t CorrelationSpectrum::total_pairs() const {
  return std::accumulate(overlap_counts.begin(), overlap_counts.end(),
                         std::int64_t{0});
}

Rational CorrelationSpectrum::correlated_fraction() const {
  const std::int64_t total = total_pairs();
  if (total == 0) return Rational(0);
  return make_rational(total - overlap_counts[0], total);
}

CorrelationSpectrum correlation_spectrum(const SensingMatrix& a) {
  const int n = a.cols();
  const int d = a.degree();

  std::vector<std::vector<int>> row_members(a.rows());
  for (int j = 0; j < n; ++j) {
    for (int r : a.support(j)) row_members[r].push_back(j);
  }

  CorrelationSpectrum spec;
  spec.degree = d;
  spec.overlap_counts.assign(d + 1, 0);

  // For each column i, count co-occurrences with every later column j through
  // the rows of i. Only touched counters are visited and reset.
  std::vector<int> count(n, 0);
  std::vector<int> touched;
  std::int64_t nonzero_pairs = 0;
  for (int i = 0; i < n; ++i) {
    for (int r : a.support(i)) {
      for (int j : row_members[r]) {
        if (j <= i) continue;
        if (count[j]++ == 0) touched.push_back(j);
      }
    }
    for (int j : touched) {
      ++spec.overlap_counts[count[j]];
      count[j] = 0;
    }
    nonzero_pairs += static_cast<std::int64_t>(touched.size());
    touched.clear();
  }
  const std::int64_t total = static_cast<std::int64_t>(n) * (n - 1) / 2;
  spec.overlap_counts[0] = total - nonzero_pairs;

  for (int s = d; s >= 1; --s) {
    if (spec.overlap_counts[s] > 0) {
      spec.max_overlap = s;
      break;
    }
  }
  return spec;
}

GramSubmatrix::GramSubmatrix(std::vector<int> columns, int degree,
                             std::vector<int> overlaps)
    : columns_(std::move(columns)), degree_(degree), overlaps_(std::move(overlaps)) {}

Rational GramSubmatrix::entry(int i, int j) const {
  return make_rational(overlap(i, j), degree_);
}

Eigen::MatrixXd GramSubmatrix::to_dense() const {
  const int k = size();
  Eigen::MatrixXd g(k, k);
  const double inv_d = 1.0 / degree_;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      g(i, j) = i == j ? 1.0 : overlap(i, j) * inv_d;
    }
  }
  return g;
}

GramSubmatrix gram_submatrix(const SensingMatrix& a, std::vector<int> columns) {
  if (columns.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "column subset T is empty");
  }
  std::sort(columns.begin(), columns.end());
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] < 0 || columns[i] >= a.cols()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "column " + std::to_string(columns[i]) + " out of range");
    }
    if (i > 0 && columns[i] == columns[i - 1]) {
      throw Error(ErrorCode::kDuplicateIndexInT,
                  "column " + std::to_string(columns[i]) + " repeated in T");
    }
  }
  const int k = static_cast<int>(columns.size());
  std::vector<int> overlaps(static_cast<std::size_t>(k) * k, 0);
  for (int i = 0; i < k; ++i) {
    overlaps[i * k + i] = a.degree();
    for (int j = i + 1; j < k; ++j) {
      const int s = support_overlap(a, columns[i], columns[j]);
      overlaps[i * k + j] = s;
      overlaps[j * k + i] = s;
    }
  }
  return GramSubmatrix(std::move(columns), a.degree(), std::move(overlaps));
}

}  // namespace bincs
