#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace bincs {

// Girth values are even integers >= 4; graphs without a (detectable) cycle
// report kInfiniteGirth.
using Girth = int;
inline constexpr Girth kInfiniteGirth = std::numeric_limits<int>::max();

inline bool is_infinite(Girth g) { return g == kInfiniteGirth; }
std::string girth_to_string(Girth g);

// Tanner graph of a binary matrix: variable nodes are columns, measurement
// nodes are rows, and an edge joins column j to row i when A(i, j) != 0.
// Immutable once built.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  int num_variable_nodes() const { return static_cast<int>(var_adj_.size()); }
  int num_measurement_nodes() const { return static_cast<int>(meas_adj_.size()); }
  long long num_edges() const { return num_edges_; }

  // Sorted measurement-node neighbours of variable node v.
  std::span<const int> variable_neighbors(int v) const { return var_adj_[v]; }
  // Sorted variable-node neighbours of measurement node c.
  std::span<const int> measurement_neighbors(int c) const { return meas_adj_[c]; }

  int variable_degree(int v) const { return static_cast<int>(var_adj_[v].size()); }
  int measurement_degree(int c) const { return static_cast<int>(meas_adj_[c].size()); }

  friend BipartiteGraph build_graph(int num_rows, int num_cols,
                                    std::span<const std::vector<int>> supports);

 private:
  std::vector<std::vector<int>> var_adj_;
  std::vector<std::vector<int>> meas_adj_;
  long long num_edges_ = 0;
};

// Builds the graph of an M x N binary matrix given per-column row supports.
// Throws IndexOutOfRange for a row outside [0, M), DuplicateEdge for a row
// repeated within a column and InvalidArgument for an empty column.
BipartiteGraph build_graph(int num_rows, int num_cols,
                           std::span<const std::vector<int>> supports);

struct GirthReport {
  Girth global_girth = kInfiniteGirth;
  std::vector<Girth> local_girth;  // one entry per variable node
};

// BFS depth at which the girth search gives up: 2 * ceil(ln N) + 4.
int default_girth_depth_cap(int num_variable_nodes);

// Length of the shortest cycle through variable node v, or kInfiniteGirth if
// none is found within depth_cap BFS levels.
Girth local_girth(const BipartiteGraph& graph, int v, int depth_cap);

// Local girth of every variable node and their minimum. Roots are processed
// in parallel when threads != 1; the result does not depend on threads.
GirthReport compute_girth(const BipartiteGraph& graph, int threads = 1);

}  // namespace bincs
