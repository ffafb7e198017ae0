#include "bincs/sensing_matrix.h"

#include <random>

#include <gtest/gtest.h>

#include "bincs/construction.h"
#include "oracles.h"
#include "test_util.h"

namespace bincs {
namespace {

using testing::error_code;
using testing::fano_supports;

SensingMatrix fano() { return from_supports(7, 7, 3, fano_supports()); }

TEST(FromSupports, DisjointColumns) {
  const SensingMatrix a = from_supports(4, 2, 2, {{0, 1}, {2, 3}});
  EXPECT_EQ(a.rows(), 4);
  EXPECT_EQ(a.cols(), 2);
  EXPECT_EQ(correlation_spectrum(a).coherence(), 0);
  EXPECT_DOUBLE_EQ(a.amplitude(), 1.0 / std::sqrt(2.0));
}

TEST(FromSupports, SortsSupports) {
  const SensingMatrix a = from_supports(5, 1, 3, {{4, 0, 2}});
  EXPECT_EQ(std::vector<int>(a.support(0).begin(), a.support(0).end()),
            (std::vector<int>{0, 2, 4}));
}

TEST(FromSupports, Errors) {
  EXPECT_EQ(error_code([] { from_supports(4, 2, 2, {{0, 1}, {0, 1}}); }),
            ErrorCode::kDuplicateColumn);
  EXPECT_EQ(error_code([] { from_supports(4, 2, 2, {{0, 1}, {1, 0}}); }),
            ErrorCode::kDuplicateColumn);
  EXPECT_EQ(error_code([] { from_supports(4, 2, 2, {{0, 1}, {2}}); }),
            ErrorCode::kIrregularColumn);
  EXPECT_EQ(error_code([] { from_supports(4, 1, 2, {{1, 1}}); }),
            ErrorCode::kIrregularColumn);
  EXPECT_EQ(error_code([] { from_supports(4, 1, 2, {{0, 4}}); }),
            ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(error_code([] { from_supports(4, 2, 2, {{0, 1}}); }),
            ErrorCode::kInvalidArgument);
}

TEST(FromSupports, FanoPairsMeetOnce) {
  const SensingMatrix a = fano();
  for (int i = 0; i < 7; ++i) {
    for (int j = i + 1; j < 7; ++j) EXPECT_EQ(support_overlap(a, i, j), 1);
  }
}

TEST(CorrelationSpectrum, Fano) {
  const CorrelationSpectrum s = correlation_spectrum(fano());
  EXPECT_EQ(s.overlap_counts, (std::vector<std::int64_t>{0, 21, 0, 0}));
  EXPECT_EQ(s.coherence(), make_rational(1, 3));
  EXPECT_EQ(s.correlated_fraction(), 1);
}

TEST(CorrelationSpectrum, Disjoint) {
  const CorrelationSpectrum s = correlation_spectrum(from_supports(4, 2, 2, {{0, 1}, {2, 3}}));
  EXPECT_EQ(s.overlap_counts[0], 1);
  EXPECT_EQ(s.coherence(), 0);
  EXPECT_EQ(s.max_overlap, 0);
}

TEST(CorrelationSpectrum, SharedPair) {
  const CorrelationSpectrum s = correlation_spectrum(from_supports(4, 2, 3, {{0, 1, 2}, {0, 1, 3}}));
  EXPECT_EQ(s.overlap_counts[2], 1);
  EXPECT_EQ(s.coherence(), make_rational(2, 3));
}

TEST(CorrelationSpectrumProperty, MatchesPairwiseCountAndIsPermutationInvariant) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const SensingMatrix a = random_regular(20, 40, 2 + trial % 5, rng());
    const auto supports = a.supports();
    const CorrelationSpectrum s = correlation_spectrum(a);
    const auto oracle = testing::brute_force_overlaps(supports, a.degree());
    ASSERT_EQ(s.overlap_counts.size(), oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) EXPECT_EQ(s.overlap_counts[i], oracle[i]);
    EXPECT_EQ(s.total_pairs(), 40 * 39 / 2);
    EXPECT_LE(s.coherence(), make_rational(a.degree() - 1, a.degree()));

    auto shuffled = supports;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(correlation_spectrum(from_supports(20, 40, a.degree(), shuffled)).overlap_counts,
              s.overlap_counts);

    const bool girth4 = compute_girth(a.graph()).global_girth == 4;
    bool high_overlap = false;
    for (std::size_t i = 2; i < s.overlap_counts.size(); ++i) high_overlap |= s.overlap_counts[i] > 0;
    EXPECT_EQ(girth4, high_overlap);
  }
}

TEST(GramSubmatrix, SingleColumn) {
  const GramSubmatrix g = gram_submatrix(fano(), {4});
  EXPECT_EQ(g.size(), 1);
  EXPECT_EQ(g.entry(0, 0), 1);
}

TEST(GramSubmatrix, Fano) {
  const GramSubmatrix g = gram_submatrix(fano(), {2, 0, 1});
  EXPECT_EQ(std::vector<int>(g.columns().begin(), g.columns().end()), (std::vector<int>{0, 1, 2}));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(g.entry(i, j), i == j ? Rational(1) : make_rational(1, 3));
    }
  }
}

TEST(GramSubmatrix, DisjointIsIdentity) {
  const GramSubmatrix g = gram_submatrix(from_supports(4, 2, 2, {{0, 1}, {2, 3}}), {0, 1});
  EXPECT_TRUE(g.to_dense().isApprox(Eigen::MatrixXd::Identity(2, 2)));
}

TEST(GramSubmatrix, Errors) {
  const SensingMatrix a = fano();
  EXPECT_EQ(error_code([&] { gram_submatrix(a, {1, 1}); }), ErrorCode::kDuplicateIndexInT);
  EXPECT_EQ(error_code([&] { gram_submatrix(a, {7}); }), ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(error_code([&] { gram_submatrix(a, {}); }), ErrorCode::kInvalidArgument);
}

TEST(GramSubmatrixProperty, MatchesExplicitDotProducts) {
  std::mt19937_64 rng(11);
  const SensingMatrix a = random_regular(30, 60, 5, 99);
  const auto supports = a.supports();
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> cols(60);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(cols.begin(), cols.end(), rng);
    cols.resize(2 + trial % 10);
    const GramSubmatrix g = gram_submatrix(a, cols);
    const Eigen::MatrixXd dense = g.to_dense();
    for (int i = 0; i < g.size(); ++i) {
      const Eigen::VectorXd ci = testing::column_vector(30, supports[g.columns()[i]]);
      for (int j = 0; j < g.size(); ++j) {
        const Eigen::VectorXd cj = testing::column_vector(30, supports[g.columns()[j]]);
        EXPECT_NEAR(dense(i, j), ci.dot(cj), 1e-12);
        EXPECT_EQ(g.entry(i, j), make_rational(g.overlap(i, j), 5));
        EXPECT_EQ(g.entry(i, j), g.entry(j, i));
      }
    }
  }
}

TEST(SensingMatrix, DenseHasUnitColumns) {
  const Eigen::MatrixXd d = fano().dense();
  for (int j = 0; j < 7; ++j) EXPECT_NEAR(d.col(j).norm(), 1.0, 1e-15);
}

}  // namespace
}  // namespace bincs
