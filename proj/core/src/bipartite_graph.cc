#include "bincs/bipartite_graph.h"

#include <algorithm>
#include <cmath>

#include "bincs/error.h"
#include "bincs/parallel.h"

namespace bincs {

std::string girth_to_string(Girth g) {
  return is_infinite(g) ? std::string("inf") : std::to_string(g);
}

BipartiteGraph build_graph(int num_rows, int num_cols,
                           std::span<const std::vector<int>> supports) {
  if (num_rows < 0 || num_cols < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative graph dimensions");
  }
  if (static_cast<int>(supports.size()) != num_cols) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected " + std::to_string(num_cols) + " supports, got " +
                    std::to_string(supports.size()));
  }

  BipartiteGraph g;
  g.var_adj_.resize(num_cols);
  g.meas_adj_.resize(num_rows);
  for (int v = 0; v < num_cols; ++v) {
    std::vector<int> rows = supports[v];
    if (rows.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "column " + std::to_string(v) + " has an empty support");
    }
    std::sort(rows.begin(), rows.end());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i] < 0 || rows[i] >= num_rows) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    "row " + std::to_string(rows[i]) + " in column " +
                        std::to_string(v) + " outside [0, " +
                        std::to_string(num_rows) + ")");
      }
      if (i > 0 && rows[i] == rows[i - 1]) {
        throw Error(ErrorCode::kDuplicateEdge,
                    "row " + std::to_string(rows[i]) + " repeated in column " +
                        std::to_string(v));
      }
    }
    // Columns are visited in increasing order, so every meas_adj list comes
    // out sorted without a second pass.
    for (int c : rows) g.meas_adj_[c].push_back(v);
    g.num_edges_ += static_cast<long long>(rows.size());
    g.var_adj_[v] = std::move(rows);
  }
  return g;
}

int default_girth_depth_cap(int num_variable_nodes) {
  const double n = std::max(1, num_variable_nodes);
  return 2 * static_cast<int>(std::ceil(std::log(n))) + 4;
}

namespace {

// Node ids: variable v -> v, measurement c -> N + c.
struct BfsScratch {
  explicit BfsScratch(int num_nodes)
      : depth(num_nodes, -1), branch(num_nodes, -1), parent(num_nodes, -1) {}

  void reset() {
    for (int id : touched) {
      depth[id] = -1;
      branch[id] = -1;
      parent[id] = -1;
    }
    touched.clear();
  }

  void visit(int id, int d, int b, int p) {
    depth[id] = d;
    branch[id] = b;
    parent[id] = p;
    touched.push_back(id);
  }

  std::vector<int> depth;
  std::vector<int> branch;
  std::vector<int> parent;
  std::vector<int> touched;
};

// Each node carries the root edge (branch) it descends from. A non-tree edge
// joining two different branches closes a cycle through the root; the first
// BFS level that produces one gives the shortest such cycle.
Girth local_girth_impl(const BipartiteGraph& graph, int root, int depth_cap,
                       BfsScratch& s) {
  const int n = graph.num_variable_nodes();
  auto neighbors = [&](int id) {
    return id < n ? graph.variable_neighbors(id)
                  : graph.measurement_neighbors(id - n);
  };
  auto node_id = [&](int from, int nb) { return from < n ? n + nb : nb; };

  s.reset();
  s.visit(root, 0, -1, -1);
  std::vector<int> frontier;
  for (int c : graph.variable_neighbors(root)) {
    s.visit(n + c, 1, n + c, root);
    frontier.push_back(n + c);
  }

  Girth best = kInfiniteGirth;
  std::vector<int> next;
  for (int depth = 1; !frontier.empty() && depth < depth_cap; ++depth) {
    next.clear();
    for (int u : frontier) {
      for (int nb : neighbors(u)) {
        const int w = node_id(u, nb);
        if (w == s.parent[u]) continue;
        if (s.depth[w] < 0) {
          s.visit(w, depth + 1, s.branch[u], u);
          next.push_back(w);
        } else if (s.branch[w] != s.branch[u]) {
          best = std::min(best, s.depth[u] + s.depth[w] + 1);
        }
      }
    }
    if (!is_infinite(best)) return best;
    frontier.swap(next);
  }
  return best;
}

}  // namespace

Girth local_girth(const BipartiteGraph& graph, int v, int depth_cap) {
  if (v < 0 || v >= graph.num_variable_nodes()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "variable node " + std::to_string(v) + " out of range");
  }
  BfsScratch scratch(graph.num_variable_nodes() + graph.num_measurement_nodes());
  return local_girth_impl(graph, v, depth_cap, scratch);
}

GirthReport compute_girth(const BipartiteGraph& graph, int threads) {
  const int n = graph.num_variable_nodes();
  const int num_nodes = n + graph.num_measurement_nodes();
  const int cap = default_girth_depth_cap(n);

  GirthReport report;
  report.local_girth.assign(n, kInfiniteGirth);

  const int workers = std::max(1, std::min(resolve_threads(threads), n));
  parallel_for(static_cast<std::size_t>(workers), workers, [&](std::size_t w) {
    BfsScratch scratch(num_nodes);
    for (int v = static_cast<int>(w); v < n; v += workers) {
      report.local_girth[v] = local_girth_impl(graph, v, cap, scratch);
    }
  });

  for (Girth g : report.local_girth) {
    report.global_girth = std::min(report.global_girth, g);
  }
  return report;
}

}  // namespace bincs
