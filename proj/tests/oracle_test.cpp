#include <gtest/gtest.h>

#include "degseq/dp_solver.hpp"
#include "degseq/errors.hpp"
#include "degseq/oracle.hpp"
#include "degseq/tree_decomposition.hpp"
#include "test_support.hpp"

namespace degseq {
namespace {

using testing::complete_graph;
using testing::cycle_graph;
using testing::one_based;
using testing::path_graph;

TEST(BruteForceSolve, TriangleTakesAllEdges) {
  Graph g = complete_graph(3);
  auto r = oracle::brute_force_solve(g, testing::minus_x(3));
  EXPECT_EQ(r.optimum, ExtendedCost(-6));
  EXPECT_EQ(r.witness, g.edges());
}

TEST(BruteForceSolve, PathMatchingTarget) {
  Graph g = path_graph(3);
  EXPECT_EQ(oracle::brute_force_solve(g, from_b_matching({1, 1, 1}, 3)).optimum, ExtendedCost(1));
}

TEST(BruteForceSolve, EdgelessGraph) {
  Graph g = one_based(3, {});
  auto r = oracle::brute_force_solve(g, CostModel({{4, 0, 0}, {-2, 0, 0}, {7, 0, 0}}));
  EXPECT_EQ(r.optimum, ExtendedCost(9));
  EXPECT_TRUE(r.witness.empty());
}

TEST(BruteForceSolve, WitnessIsFirstInSubsetOrder) {
  // Every single edge ties; subset 1 (the first edge) comes first.
  Graph g = path_graph(3);
  auto r = oracle::brute_force_solve(g, testing::same_table(3, {0, -1, 5}));
  EXPECT_EQ(r.optimum, ExtendedCost(-2));
  EXPECT_EQ(r.witness, (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(evaluate(testing::same_table(3, {0, -1, 5}), SubgraphSolution(g, r.witness)), r.optimum);
}

TEST(BruteForceSolve, SizeGuard) {
  Graph k8 = complete_graph(8);  // 28 edges
  EXPECT_THROW(oracle::brute_force_solve(k8, testing::minus_x(8)), InputError);
  EXPECT_THROW(oracle::cubic_subgraph_exists(k8), InputError);
  EXPECT_THROW(oracle::factor_exists(k8, std::vector<std::vector<int>>(8, {0})), InputError);
}

TEST(BruteForceState, LeafAndRoot) {
  Graph g = cycle_graph(4);
  CostModel m = from_b_matching({1, 1, 1, 1}, 4);
  NiceDecomposition ntd = to_nice(min_fill_decompose(g).td, g);
  for (int id : ntd.post_order()) {
    if (ntd.node(id).kind == NodeKind::Leaf) {
      EXPECT_EQ(oracle::brute_force_state(g, ntd, id, BagState{}, m), ExtendedCost(0));
    }
  }
  EXPECT_EQ(oracle::brute_force_state(g, ntd, ntd.root(), BagState{}, m), oracle::brute_force_solve(g, m).optimum);
}

TEST(BruteForceState, UnachievableDegreeIsInfinite) {
  Graph g = path_graph(3);
  CostModel m = testing::minus_x(3);
  NiceDecomposition ntd = to_nice(min_fill_decompose(g).td, g);
  for (int id : ntd.post_order()) {
    const NiceNode& nd = ntd.node(id);
    if (nd.bag.empty()) continue;
    BagState s{std::vector<int>(nd.bag.size(), 0), 0};
    s.degrees[0] = 2 + 1;  // above every degree in a path
    EXPECT_EQ(oracle::brute_force_state(g, ntd, id, s, m), ExtendedCost::infinity());
  }
}

TEST(BruteForceSolve, ModelSizeMismatch) {
  EXPECT_THROW(oracle::brute_force_solve(path_graph(3), testing::minus_x(4)), InputError);
}

TEST(BruteForceNodeTable, RootHoldsOptimum) {
  Graph g = cycle_graph(5);
  CostModel m = from_b_matching({1, 1, 1, 1, 1}, 5);
  NiceDecomposition ntd = to_nice(min_fill_decompose(g).td, g);
  auto t = oracle::brute_force_node_table(g, ntd, ntd.root(), m);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.begin()->second, 1);
}

TEST(CubicSubgraph, Examples) {
  EXPECT_TRUE(oracle::cubic_subgraph_exists(complete_graph(4)));
  EXPECT_FALSE(oracle::cubic_subgraph_exists(path_graph(6)));
  EXPECT_FALSE(oracle::cubic_subgraph_exists(one_based(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}})));
  EXPECT_FALSE(oracle::cubic_subgraph_exists(cycle_graph(5)));
  EXPECT_FALSE(oracle::cubic_subgraph_exists(one_based(2, {})));
  // K4 plus a pendant path still contains K4.
  EXPECT_TRUE(oracle::cubic_subgraph_exists(
      one_based(6, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {4, 5}, {5, 6}})));
}

TEST(FactorExists, Examples) {
  EXPECT_TRUE(oracle::factor_exists(cycle_graph(4), std::vector<std::vector<int>>(4, {1})));
  EXPECT_FALSE(oracle::factor_exists(cycle_graph(5), std::vector<std::vector<int>>(5, {1})));
  EXPECT_TRUE(oracle::factor_exists(path_graph(3), {{1}, {2}, {1}}));
  EXPECT_FALSE(oracle::factor_exists(path_graph(3), {{1}, {0}, {1}}));
}

}  // namespace
}  // namespace degseq
