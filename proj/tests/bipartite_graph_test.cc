#include "bincs/bipartite_graph.h"

#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "bincs/construction.h"
#include "bincs/error.h"
#include "oracles.h"
#include "test_util.h"

namespace bincs {
namespace {

using testing::brute_force_girth;
using testing::fano_supports;
using testing::error_code;

BipartiteGraph graph_of(int m, const std::vector<std::vector<int>>& supports) {
  return build_graph(m, static_cast<int>(supports.size()), supports);
}

TEST(BuildGraph, SingleColumn) {
  const BipartiteGraph g = graph_of(3, {{0, 1}});
  EXPECT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g.variable_degree(0), 2);
  EXPECT_EQ(g.measurement_degree(0), 1);
  EXPECT_EQ(g.measurement_degree(1), 1);
  EXPECT_EQ(g.measurement_degree(2), 0);
}

TEST(BuildGraph, Fano) {
  const BipartiteGraph g = graph_of(7, fano_supports());
  EXPECT_EQ(g.num_edges(), 21);
  for (int i = 0; i < 7; ++i) {
    EXPECT_EQ(g.variable_degree(i), 3);
    EXPECT_EQ(g.measurement_degree(i), 3);
  }
}

TEST(BuildGraph, Errors) {
  EXPECT_EQ(error_code([] { graph_of(2, {{0, 0}}); }), ErrorCode::kDuplicateEdge);
  EXPECT_EQ(error_code([] { graph_of(2, {{0, 2}}); }), ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(error_code([] { graph_of(2, {{-1}}); }), ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(error_code([] { graph_of(2, {{}}); }), ErrorCode::kInvalidArgument);
}

TEST(BuildGraph, AdjacencyIsSortedAndConsistent) {
  const BipartiteGraph g = graph_of(5, {{4, 0, 2}, {3, 1}, {2, 4}});
  long long var_sum = 0, meas_sum = 0;
  std::set<std::pair<int, int>> from_var, from_meas;
  for (int v = 0; v < g.num_variable_nodes(); ++v) {
    auto nb = g.variable_neighbors(v);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    for (int c : nb) from_var.insert({v, c});
    var_sum += g.variable_degree(v);
  }
  for (int c = 0; c < g.num_measurement_nodes(); ++c) {
    auto nb = g.measurement_neighbors(c);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    for (int v : nb) from_meas.insert({v, c});
    meas_sum += g.measurement_degree(c);
  }
  EXPECT_EQ(from_var, from_meas);
  EXPECT_EQ(var_sum, g.num_edges());
  EXPECT_EQ(meas_sum, g.num_edges());
}

TEST(ComputeGirth, SharedPairIsFour) {
  EXPECT_EQ(compute_girth(graph_of(2, {{0, 1}, {0, 1}})).global_girth, 4);
}

TEST(ComputeGirth, FanoIsSix) {
  const GirthReport r = compute_girth(graph_of(7, fano_supports()));
  EXPECT_EQ(r.global_girth, 6);
  for (Girth g : r.local_girth) EXPECT_EQ(g, 6);
}

TEST(ComputeGirth, SingleColumnIsInfinite) {
  EXPECT_TRUE(is_infinite(compute_girth(graph_of(4, {{0, 1, 2}})).global_girth));
  EXPECT_EQ(girth_to_string(kInfiniteGirth), "inf");
}

TEST(ComputeGirth, EmptyGraph) {
  EXPECT_TRUE(is_infinite(compute_girth(BipartiteGraph{}).global_girth));
}

TEST(ComputeGirth, EightCycle) {
  // Columns chained through rows 0-1-2-3-0.
  const GirthReport r = compute_girth(graph_of(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
  EXPECT_EQ(r.global_girth, 8);
}

TEST(ComputeGirth, DepthCap) {
  EXPECT_EQ(default_girth_depth_cap(1), 4);
  EXPECT_EQ(default_girth_depth_cap(400), 2 * 6 + 4);
}

std::vector<std::vector<int>> random_supports(std::mt19937_64& rng, int m, int n, int dmax) {
  std::vector<std::vector<int>> supports(n);
  std::uniform_int_distribution<int> deg(1, dmax);
  for (auto& s : supports) {
    std::vector<int> rows(m);
    std::iota(rows.begin(), rows.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.resize(deg(rng));
    s = rows;
  }
  return supports;
}

// Girth against whole-graph BFS, and girth 4 iff two columns share >= 2 rows.
TEST(ComputeGirthProperty, MatchesBruteForce) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 4 + static_cast<int>(rng() % 12);
    const int n = 2 + static_cast<int>(rng() % 14);
    const auto supports = random_supports(rng, m, n, 3);
    const GirthReport r = compute_girth(graph_of(m, supports));
    const int oracle = brute_force_girth(m, supports);
    if (oracle == INT_MAX || oracle > 2 * default_girth_depth_cap(n)) {
      // Beyond the cap the search may report infinity.
      EXPECT_TRUE(is_infinite(r.global_girth) || r.global_girth == oracle);
    } else {
      EXPECT_EQ(r.global_girth, oracle) << "trial " << trial;
    }
    bool shares_two = false;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        int s = 0;
        for (int a : supports[i]) s += std::count(supports[j].begin(), supports[j].end(), a);
        shares_two |= s >= 2;
      }
    }
    EXPECT_EQ(r.global_girth == 4, shares_two);
    if (!is_infinite(r.global_girth)) {
      EXPECT_EQ(r.global_girth % 2, 0);
      EXPECT_GE(r.global_girth, 4);
    }
    EXPECT_EQ(r.global_girth, *std::min_element(r.local_girth.begin(), r.local_girth.end()));
  }
}

TEST(ComputeGirthProperty, RemovingAnEdgeNeverLowersGirth) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    auto supports = random_supports(rng, 8, 10, 3);
    const Girth before = compute_girth(graph_of(8, supports)).global_girth;
    for (auto& s : supports) {
      if (s.size() > 1) {
        s.pop_back();
        break;
      }
    }
    EXPECT_GE(compute_girth(graph_of(8, supports)).global_girth, before);
  }
}

TEST(ComputeGirthProperty, ThreadCountDoesNotMatter) {
  const SensingMatrix a = peg_construct(60, 120, 4);
  const GirthReport one = compute_girth(a.graph(), 1);
  const GirthReport many = compute_girth(a.graph(), 4);
  EXPECT_EQ(one.global_girth, many.global_girth);
  EXPECT_EQ(one.local_girth, many.local_girth);
}

}  // namespace
}  // namespace bincs
