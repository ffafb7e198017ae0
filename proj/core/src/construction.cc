#include "bincs/construction.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "bincs/error.h"
#include "bincs/seed.h"

namespace bincs {
namespace {

void check_peg_arguments(int m, int n, int d) {
  if (m < 1 || n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "matrix must be at least 1 x 1");
  }
  if (d < 2 || d > m - 2) {
    throw Error(ErrorCode::kInfeasibleDegree,
                "degree " + std::to_string(d) + " outside [2, M-2] for M=" +
                    std::to_string(m));
  }
}

// Incremental Tanner graph plus the scratch state of the per-edge BFS.
class PegBuilder {
 public:
  PegBuilder(int m, int n, const PegConfig& config, std::uint64_t seed)
      : m_(m), n_(n), config_(config), rng_(seed),
        var_adj_(n), meas_adj_(m), row_degree_(m, 0),
        row_stamp_(m, 0), col_stamp_(n, 0) {}

  // Places the d edges of column v. Returns the length of the shortest cycle
  // closed by these edges (kInfiniteGirth if none).
  Girth add_column(int v, int d) {
    Girth shortest = kInfiniteGirth;
    rewired_ = false;
    candidates_.clear();
    for (int c = 0; c < m_; ++c) candidates_.push_back(c);
    connect(v, pick_min_degree());

    for (int e = 1; e < d; ++e) {
      int level = expand_tree(v);
      const bool widened = e == d - 1 && drop_duplicate_candidates(v);
      const int row = pick_min_degree();
      // A rewired column has no valid tree; report the worst case.
      if (widened) level = rewired_ ? 0 : tree_level(row);
      if (level >= 0) {
        // The chosen row already sits at tree level `level` (level 0 holds
        // v's own rows), so the new edge closes a cycle of length 2 (level + 1).
        shortest = std::min(shortest, 2 * (level + 1));
      }
      connect(v, row);
    }
    placed_.insert(sorted_support(v));
    return shortest;
  }

  std::vector<Support> supports() const { return var_adj_; }

  // Moves edges from the fullest rows to the emptiest ones until row degrees
  // differ by at most one. Moves that create no 4-cycle are preferred; when
  // none is left, any move that keeps columns distinct is taken.
  void rebalance() {
    while (true) {
      const auto [lo_it, hi_it] = std::minmax_element(row_degree_.begin(), row_degree_.end());
      const int lo_deg = *lo_it;
      const int hi_deg = *hi_it;
      if (hi_deg - lo_deg <= 1) return;
      if (!move_one_edge(lo_deg, hi_deg, true) && !move_one_edge(lo_deg, hi_deg, false)) return;
    }
  }

 private:
  void connect(int v, int c) {
    var_adj_[v].push_back(c);
    meas_adj_[c].push_back(v);
    ++row_degree_[c];
  }

  // Grows the BFS tree from v level by level (level 0 holds v's own rows) and
  // fills candidates_ with the rows outside the tree, or with the deepest
  // level once the tree covers every row. Returns -1 for outside rows,
  // otherwise the level of the candidates.
  int expand_tree(int v) {
    ++stamp_;
    levels_.clear();
    levels_.emplace_back();
    int covered = 0;
    col_stamp_[v] = stamp_;
    for (int c : var_adj_[v]) {
      row_stamp_[c] = stamp_;
      levels_.back().push_back(c);
      ++covered;
    }

    while (covered < m_) {
      if (config_.bfs_depth_cap > 0 &&
          static_cast<int>(levels_.size()) > config_.bfs_depth_cap) {
        break;
      }
      std::vector<int> next;
      for (int c : levels_.back()) {
        for (int u : meas_adj_[c]) {
          if (col_stamp_[u] == stamp_) continue;
          col_stamp_[u] = stamp_;
          for (int c2 : var_adj_[u]) {
            if (row_stamp_[c2] == stamp_) continue;
            row_stamp_[c2] = stamp_;
            next.push_back(c2);
          }
        }
      }
      if (next.empty()) break;  // tree stopped growing
      covered += static_cast<int>(next.size());
      levels_.push_back(std::move(next));
    }

    return collect_candidates();
  }

  bool move_one_edge(int lo_deg, int hi_deg, bool keep_girth) {
    for (int h = 0; h < m_; ++h) {
      if (row_degree_[h] != hi_deg) continue;
      for (int l = 0; l < m_; ++l) {
        if (row_degree_[l] != lo_deg) continue;
        for (int v : meas_adj_[h]) {
          if (keep_girth ? can_move(v, h, l) : can_move_distinct(v, h, l)) {
            placed_.erase(sorted_support(v));
            std::replace(var_adj_[v].begin(), var_adj_[v].end(), h, l);
            placed_.insert(sorted_support(v));
            auto& from = meas_adj_[h];
            from.erase(std::find(from.begin(), from.end(), v));
            meas_adj_[l].push_back(v);
            --row_degree_[h];
            ++row_degree_[l];
            return true;
          }
        }
      }
    }
    return false;
  }

  // Edge (v, h) -> (v, l) is admissible when v is not on l and no other row of
  // v already shares a column with l.
  bool can_move(int v, int h, int l) {
    ++stamp_;
    for (int u : meas_adj_[l]) {
      if (u == v) return false;
      for (int r : var_adj_[u]) row_stamp_[r] = stamp_;
    }
    for (int r : var_adj_[v]) {
      if (r != h && row_stamp_[r] == stamp_) return false;
    }
    return !placed_.contains(moved_support(v, h, l));
  }

  // Weaker rule: v is not on l and the moved column matches no other column.
  bool can_move_distinct(int v, int h, int l) const {
    if (std::find(var_adj_[v].begin(), var_adj_[v].end(), l) != var_adj_[v].end()) return false;
    return !placed_.contains(moved_support(v, h, l));
  }

  Support moved_support(int v, int h, int l) const {
    Support s = var_adj_[v];
    std::replace(s.begin(), s.end(), h, l);
    std::sort(s.begin(), s.end());
    return s;
  }

  Support sorted_support(int v) const {
    Support s = var_adj_[v];
    std::sort(s.begin(), s.end());
    return s;
  }

  // Before v's last edge: removes candidate rows that would make v a copy of
  // an earlier column. When none is left, widens to every row not yet on v
  // (returning true) and throws ConstructionFailed if each completion is taken.
  bool drop_duplicate_candidates(int v) {
    auto completes_copy = [&](int r) {
      Support s = var_adj_[v];
      s.push_back(r);
      std::sort(s.begin(), s.end());
      return placed_.contains(s);
    };
    std::erase_if(candidates_, completes_copy);
    if (!candidates_.empty()) return false;
    for (int r = 0; r < m_; ++r) {
      if (std::find(var_adj_[v].begin(), var_adj_[v].end(), r) == var_adj_[v].end() &&
          !completes_copy(r)) {
        candidates_.push_back(r);
      }
    }
    if (candidates_.empty()) rewire_for_distinct(v);
    return true;
  }

  // Last resort for dense cases: swaps one earlier row of v for row a and
  // leaves b as the only candidate, taking the least-loaded pair (a, b) that
  // yields an unused support.
  void rewire_for_distinct(int v) {
    Support& own = var_adj_[v];
    auto on_v = [&](int r) { return std::find(own.begin(), own.end(), r) != own.end(); };
    int best = std::numeric_limits<int>::max(), best_i = -1, best_a = -1, best_b = -1;
    for (std::size_t i = 0; i < own.size(); ++i) {
      for (int a = 0; a < m_; ++a) {
        if (on_v(a)) continue;
        for (int b = a + 1; b < m_; ++b) {
          if (on_v(b) || row_degree_[a] + row_degree_[b] >= best) continue;
          Support s = own;
          s[i] = a;
          s.push_back(b);
          std::sort(s.begin(), s.end());
          if (placed_.contains(s)) continue;
          best = row_degree_[a] + row_degree_[b];
          best_i = static_cast<int>(i);
          best_a = a;
          best_b = b;
        }
      }
    }
    if (best_i < 0) {
      throw Error(ErrorCode::kConstructionFailed,
                  "column " + std::to_string(v) + " cannot avoid repeating an earlier column");
    }
    const int old_row = own[best_i];
    auto& from = meas_adj_[old_row];
    from.erase(std::find(from.begin(), from.end(), v));
    --row_degree_[old_row];
    own[best_i] = best_a;
    meas_adj_[best_a].push_back(v);
    ++row_degree_[best_a];
    candidates_ = {best_b};
    rewired_ = true;
  }

  // Level of row c in the current BFS tree, or -1 outside it.
  int tree_level(int c) const {
    if (row_stamp_[c] != stamp_) return -1;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      if (std::find(levels_[i].begin(), levels_[i].end(), c) != levels_[i].end()) {
        return static_cast<int>(i);
      }
    }
    return -1;
  }

  int collect_candidates() {
    candidates_.clear();
    for (int c = 0; c < m_; ++c) {
      if (row_stamp_[c] != stamp_) candidates_.push_back(c);
    }
    if (!candidates_.empty()) return -1;
    candidates_ = levels_.back();
    return static_cast<int>(levels_.size()) - 1;
  }

  int pick_min_degree() {
    int best_degree = std::numeric_limits<int>::max();
    ties_.clear();
    for (int c : candidates_) {
      if (row_degree_[c] < best_degree) {
        best_degree = row_degree_[c];
        ties_.clear();
      }
      if (row_degree_[c] == best_degree) ties_.push_back(c);
    }
    if (config_.tie_break == TieBreak::kLowestIndex) {
      return *std::min_element(ties_.begin(), ties_.end());
    }
    std::sort(ties_.begin(), ties_.end());
    std::uniform_int_distribution<std::size_t> pick(0, ties_.size() - 1);
    return ties_[pick(rng_)];
  }

  int m_;
  int n_;
  PegConfig config_;
  std::mt19937_64 rng_;
  std::vector<Support> var_adj_;
  std::vector<std::vector<int>> meas_adj_;
  std::vector<int> row_degree_;
  std::vector<unsigned> row_stamp_;
  std::vector<unsigned> col_stamp_;
  unsigned stamp_ = 0;
  std::vector<int> candidates_;
  std::vector<int> ties_;
  std::vector<std::vector<int>> levels_;
  std::set<Support> placed_;  // sorted supports of the finished columns
  bool rewired_ = false;
};

// One PEG run; gives up (nullopt) as soon as a cycle shorter than min_girth
// is closed.
std::optional<SensingMatrix> peg_attempt(int m, int n, int d, const PegConfig& config,
                                         std::uint64_t seed, Girth min_girth) {
  PegBuilder builder(m, n, config, seed);
  for (int v = 0; v < n; ++v) {
    const Girth closed = builder.add_column(v, d);
    if (closed < min_girth) return std::nullopt;
  }
  builder.rebalance();
  return from_supports(m, n, d, builder.supports());
}

}  // namespace

SensingMatrix peg_construct(int num_rows, int num_cols, int degree,
                            const PegConfig& config) {
  check_peg_arguments(num_rows, num_cols, degree);
  return *peg_attempt(num_rows, num_cols, degree, config, config.seed, 0);
}

PegSearchResult peg_construct_with_girth(int num_rows, int num_cols, int degree,
                                         Girth min_girth, const PegConfig& config) {
  check_peg_arguments(num_rows, num_cols, degree);
  if (config.max_retries < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_retries must be >= 0");
  }

  PegSearchResult result;
  PegConfig restart = config;
  restart.tie_break = TieBreak::kSeededRandom;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    const PegConfig& cfg = attempt == 0 ? config : restart;
    const std::uint64_t seed =
        attempt == 0 ? config.seed : derive_seed(config.seed, attempt);
    ++result.attempts;
    auto matrix = peg_attempt(num_rows, num_cols, degree, cfg, seed, min_girth);
    if (!matrix) continue;
    const Girth g = compute_girth(matrix->graph()).global_girth;
    if (g >= min_girth) {
      result.matrix = std::move(*matrix);
      result.girth = g;
      result.reached_target = true;
      return result;
    }
  }

  result.matrix = peg_construct(num_rows, num_cols, degree, config);
  result.girth = compute_girth(result.matrix.graph()).global_girth;
  return result;
}

SensingMatrix random_regular(int num_rows, int num_cols, int degree,
                             std::uint64_t seed) {
  if (num_rows < 1 || num_cols < 1) {
    throw Error(ErrorCode::kInvalidArgument, "matrix must be at least 1 x 1");
  }
  if (degree < 1 || degree > num_rows) {
    throw Error(ErrorCode::kInvalidArgument,
                "degree " + std::to_string(degree) + " outside [1, M]");
  }
  // C(M, d) < N means duplicate columns are unavoidable.
  double log_subsets = std::lgamma(num_rows + 1.0) - std::lgamma(degree + 1.0) -
                       std::lgamma(num_rows - degree + 1.0);
  if (log_subsets < std::log(static_cast<double>(num_cols)) - 1e-9) {
    throw Error(ErrorCode::kDuplicateColumn,
                "only C(" + std::to_string(num_rows) + ", " +
                    std::to_string(degree) + ") distinct columns exist, N=" +
                    std::to_string(num_cols));
  }

  std::mt19937_64 rng(seed);
  std::vector<int> rows(num_rows);
  std::set<Support> seen;
  std::vector<Support> supports;
  supports.reserve(num_cols);
  constexpr int kMaxRedraws = 10000;
  for (int j = 0; j < num_cols; ++j) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxRedraws) {
        throw Error(ErrorCode::kDuplicateColumn,
                    "could not draw a distinct column " + std::to_string(j));
      }
      for (int i = 0; i < num_rows; ++i) rows[i] = i;
      // Partial Fisher-Yates: the first d slots become a uniform d-subset.
      for (int i = 0; i < degree; ++i) {
        std::uniform_int_distribution<int> pick(i, num_rows - 1);
        std::swap(rows[i], rows[pick(rng)]);
      }
      Support s(rows.begin(), rows.begin() + degree);
      std::sort(s.begin(), s.end());
      if (seen.insert(s).second) {
        supports.push_back(std::move(s));
        break;
      }
    }
  }
  return from_supports(num_rows, num_cols, degree, std::move(supports));
}

Eigen::MatrixXd gaussian_matrix(int num_rows, int num_cols, std::uint64_t seed) {
  if (num_rows < 1 || num_cols < 1) {
    throw Error(ErrorCode::kInvalidArgument, "matrix must be at least 1 x 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(double(num_rows)));
  Eigen::MatrixXd a(num_rows, num_cols);
  for (int j = 0; j < num_cols; ++j) {
    for (int i = 0; i < num_rows; ++i) a(i, j) = normal(rng);
  }
  return a;
}

int dmax_theoretical_bound(int num_rows, int num_cols) {
  if (num_rows < 1 || num_cols < 1) {
    throw Error(ErrorCode::kInvalidArgument, "matrix must be at least 1 x 1");
  }
  const long long m = num_rows, n = num_cols;
  long long d = 0;
  // The quadratic is convex in d with a root <= 1 < the other, so scan upward.
  while (d + 1 <= m && n * (d + 1) * (d + 1) - m * (d + 1) + m - n * m <= 0) ++d;
  return static_cast<int>(d);
}

std::optional<int> projective_plane_order(int num_rows) {
  for (int q = 2; q * q + q + 1 <= num_rows; ++q) {
    if (q * q + q + 1 != num_rows) continue;
    for (int f = 2; f * f <= q; ++f) {
      if (q % f == 0) return std::nullopt;
    }
    return q;
  }
  return std::nullopt;
}

SensingMatrix projective_plane(int q, int num_cols) {
  if (q < 2) throw Error(ErrorCode::kInvalidArgument, "plane order must be >= 2");
  for (int f = 2; f * f <= q; ++f) {
    if (q % f == 0) throw Error(ErrorCode::kInvalidArgument, "plane order must be prime");
  }
  // Normalized homogeneous coordinates: (1,a,b), (0,1,b), (0,0,1).
  std::vector<std::array<int, 3>> points;
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) points.push_back({1, a, b});
  }
  for (int b = 0; b < q; ++b) points.push_back({0, 1, b});
  points.push_back({0, 0, 1});
  const int m = static_cast<int>(points.size());
  if (num_cols < 1 || num_cols > m) {
    throw Error(ErrorCode::kInvalidArgument,
                "PG(2," + std::to_string(q) + ") has " + std::to_string(m) + " lines");
  }
  std::vector<std::vector<int>> supports(static_cast<std::size_t>(num_cols));
  for (int line = 0; line < num_cols; ++line) {
    const auto& l = points[static_cast<std::size_t>(line)];
    for (int p = 0; p < m; ++p) {
      const auto& x = points[static_cast<std::size_t>(p)];
      if ((l[0] * x[0] + l[1] * x[1] + l[2] * x[2]) % q == 0) {
        supports[static_cast<std::size_t>(line)].push_back(p);
      }
    }
  }
  return from_supports(m, num_cols, q + 1, supports);
}

DmaxResult find_dmax(int num_rows, int num_cols, const PegConfig& config) {
  DmaxResult result;
  result.theoretical_bound = dmax_theoretical_bound(num_rows, num_cols);
  const int upper = std::min(result.theoretical_bound, num_rows - 2);
  for (int d = 2; d <= upper; ++d) {
    PegConfig cfg = config;
    cfg.seed = derive_seed(config.seed, static_cast<std::uint64_t>(d));
    PegSearchResult attempt =
        peg_construct_with_girth(num_rows, num_cols, d, 6, cfg);
    if (attempt.reached_target) {
      result.d_max = d;
      result.matrix = std::move(attempt.matrix);
      result.girth = attempt.girth;
      result.method = DmaxMethod::kPeg;
      continue;
    }
    const std::optional<int> q = projective_plane_order(num_rows);
    if (q && d == *q + 1 && num_cols <= num_rows) {
      result.d_max = d;
      result.matrix = projective_plane(*q, num_cols);
      result.girth = compute_girth(result.matrix.graph()).global_girth;
      result.method = DmaxMethod::kProjectivePlane;
    }
  }
  if (result.d_max == 0) {
    throw Error(ErrorCode::kConstructionFailed,
                "no girth > 4 matrix found for M=" + std::to_string(num_rows) +
                    ", N=" + std::to_string(num_cols));
  }
  return result;
}

}  // namespace bincs
