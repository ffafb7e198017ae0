#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "bincs/bipartite_graph.h"
#include "bincs/sensing_matrix.h"

namespace bincs {

enum class TieBreak {
  kLowestIndex,   // deterministic: lowest row index among equal-degree rows
  kSeededRandom,  // uniform among equal-degree rows, driven by PegConfig::seed
};

struct PegConfig {
  TieBreak tie_break = TieBreak::kLowestIndex;
  std::uint64_t seed = 0;
  // Randomized restarts tried after the first attempt when a girth target is
  // requested.
  int max_retries = 20;
  // Maximum BFS depth (in measurement-node levels) of the expansion tree;
  // 0 expands until the tree stops growing or covers every row.
  int bfs_depth_cap = 0;
};

// Progressive edge growth. Columns are processed in index order; each gets d
// edges. The first edge goes to a row of minimum current degree; each further
// edge goes to the minimum-degree row outside the BFS tree grown from the
// column, or to the deepest tree level when the tree reaches every row.
// The last edge of a column never makes it a copy of an earlier column. A
// final pass moves edges from over-full to under-full rows so row degrees
// differ by at most one, preferring moves that close no 4-cycle.
// Throws InfeasibleDegree unless 2 <= d <= M - 2, and ConstructionFailed when
// a column cannot be kept distinct.
SensingMatrix peg_construct(int num_rows, int num_cols, int degree,
                            const PegConfig& config = {});

struct PegSearchResult {
  SensingMatrix matrix;
  Girth girth = kInfiniteGirth;
  int attempts = 0;      // constructions run, including the first
  bool reached_target = false;
};

// Runs PEG with config.tie_break first, then up to config.max_retries
// seeded-random restarts, stopping at the first matrix with girth >=
// min_girth. Attempts that are bound to miss the target are abandoned early.
// When no attempt reaches the target, the first-attempt matrix is returned
// with reached_target = false.
PegSearchResult peg_construct_with_girth(int num_rows, int num_cols, int degree,
                                         Girth min_girth,
                                         const PegConfig& config = {});

// Each column's support is a uniformly drawn d-subset of the rows; a column
// equal to an earlier one is redrawn. Throws DuplicateColumn when fewer than
// N distinct d-subsets exist.
SensingMatrix random_regular(int num_rows, int num_cols, int degree,
                             std::uint64_t seed);

// i.i.d. N(0, 1/M) entries, so columns have approximately unit norm.
Eigen::MatrixXd gaussian_matrix(int num_rows, int num_cols, std::uint64_t seed);

// Largest integer d with 1 + d (d N / M - 1) <= N, i.e. N d^2 - M d + M - N M <= 0.
int dmax_theoretical_bound(int num_rows, int num_cols);

// Order q of the projective plane PG(2, q) with q^2 + q + 1 points when
// num_rows has that form for a prime q.
std::optional<int> projective_plane_order(int num_rows);

// Incidence matrix of the first num_cols lines of PG(2, q), q prime: rows are
// the q^2 + q + 1 points, each column a line of q + 1 points. Any two lines
// meet in exactly one point, so the girth is 6 whenever num_cols >= 3.
SensingMatrix projective_plane(int q, int num_cols);

enum class DmaxMethod { kPeg, kProjectivePlane };

struct DmaxResult {
  int d_max = 0;
  DmaxMethod method = DmaxMethod::kPeg;
  SensingMatrix matrix;  // the girth > 4 matrix at d_max
  Girth girth = kInfiniteGirth;
  int theoretical_bound = 0;
};

// Scans d = 2 .. min(theoretical bound, M - 2) and keeps the largest d for
// which PEG (with restarts per config) produces girth >= 6. When PEG misses
// and M = q^2 + q + 1 with d = q + 1, the projective plane is used instead
// (PEG never builds it: its second column always avoids the first).
// Throws ConstructionFailed if even d = 2 fails.
DmaxResult find_dmax(int num_rows, int num_cols, const PegConfig& config = {});

}  // namespace bincs
