#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "bincs/bipartite_graph.h"
#include "bincs/rational.h"

namespace bincs {

using Support = std::vector<int>;

// Regular {0,1} matrix stored as per-column sorted row supports. Every column
// has exactly `degree` ones; the realised entries are 1/sqrt(degree) so each
// column has unit norm.
class SensingMatrix {
 public:
  SensingMatrix() = default;

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int degree() const { return degree_; }
  double amplitude() const;

  std::span<const int> support(int j) const {
    return {indices_.data() + static_cast<std::size_t>(j) * degree_,
            static_cast<std::size_t>(degree_)};
  }
  std::vector<Support> supports() const;
  std::vector<int> row_degrees() const;

  BipartiteGraph graph() const;
  // Explicit normalized M x N matrix; only meant for small sizes and tests.
  Eigen::MatrixXd dense() const;

  friend bool operator==(const SensingMatrix&, const SensingMatrix&) = default;

  friend SensingMatrix from_supports(int num_rows, int num_cols, int degree,
                                     std::vector<Support> supports);

 private:
  int rows_ = 0;
  int cols_ = 0;
  int degree_ = 0;
  std::vector<int> indices_;  // column-major, cols_ * degree_
};

// Validates and freezes a matrix. Supports may be given unsorted. Throws
// IrregularColumn when a column does not hold `degree` distinct rows,
// IndexOutOfRange for rows outside [0, M) and DuplicateColumn when two
// columns share the same support.
SensingMatrix from_supports(int num_rows, int num_cols, int degree,
                            std::vector<Support> supports);

// |support(i) ∩ support(j)|.
int support_overlap(const SensingMatrix& a, int i, int j);

struct CorrelationSpectrum {
  int degree = 0;
  // overlap_counts[s] = number of unordered column pairs sharing exactly s rows.
  std::vector<std::int64_t> overlap_counts;
  // Largest s with a nonzero count (0 when every pair is disjoint).
  int max_overlap = 0;

  // mu = max_overlap / degree.
  Rational coherence() const;
  std::int64_t total_pairs() const;
  // Fraction of column pairs with a nonzero inner product.
  Rational correlated_fraction() const;
};

// Exact pair-overlap histogram, accumulated per row in O(sum of squared row
// degrees).
CorrelationSpectrum correlation_spectrum(const SensingMatrix& a);

// Normalized Gram block A_T' A_T for a column subset T. Entries are held as
// integer overlaps over the common denominator `degree`.
class GramSubmatrix {
 public:
  GramSubmatrix(std::vector<int> columns, int degree, std::vector<int> overlaps);

  int size() const { return static_cast<int>(columns_.size()); }
  int degree() const { return degree_; }
  std::span<const int> columns() const { return columns_; }

  int overlap(int i, int j) const { return overlaps_[i * size() + j]; }
  Rational entry(int i, int j) const;
  Eigen::MatrixXd to_dense() const;

 private:
  std::vector<int> columns_;
  int degree_;
  std::vector<int> overlaps_;  // row-major size() x size(), diagonal == degree_
};

// Throws DuplicateIndexInT, IndexOutOfRange, or InvalidArgument for empty T.
// The column set is stored sorted.
GramSubmatrix gram_submatrix(const SensingMatrix& a, std::vector<int> columns);

}  // namespace bincs
