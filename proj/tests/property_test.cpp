#include <gtest/gtest.h>

#include <algorithm>

#include "degseq/dp_solver.hpp"
#include "degseq/generators.hpp"
#include "degseq/oracle.hpp"
#include "degseq/pipeline.hpp"
#include "degseq/tree_decomposition.hpp"
#include "test_support.hpp"

// Seeded randomized properties. Each test draws from its own engine so the
// instances do not depend on test order.
namespace degseq {
namespace {

Graph small_random_graph(Rng& rng, int max_n, std::size_t max_edges) {
  std::uniform_int_distribution<int> size(2, max_n);
  while (true) {
    const int n = size(rng);
    Graph g = random_gnp(n, 0.5, rng);
    if (g.edge_count() <= max_edges) return g;
  }
}

TEST(Property, ReconstructionIsSoundAndOptimal) {
  Rng rng(101);
  for (int i = 0; i < 150; ++i) {
    Instance in = random_instance(rng, {});
    NiceDecomposition ntd = to_nice(min_fill_decompose(in.graph).td, in.graph);
    SolveResult r = solve(in.graph, in.model, ntd);
    SubgraphSolution sol = reconstruct(r, ntd, in.graph);
    for (const Edge& e : sol.edges()) EXPECT_TRUE(in.graph.has_edge(e.u, e.v));
    EXPECT_EQ(evaluate(in.model, sol), r.optimum);
    EXPECT_EQ(r.optimum, oracle::brute_force_solve(in.graph, in.model).optimum) << "instance " << i;
  }
}

TEST(Property, ShiftingATableShiftsTheOptimum) {
  Rng rng(102);
  std::uniform_int_distribution<int> shift(-50, 50);
  for (int i = 0; i < 60; ++i) {
    Instance in = random_instance(rng, {});
    auto tables = in.model.tables();
    const int v = std::uniform_int_distribution<int>(0, in.graph.n() - 1)(rng);
    const int s = shift(rng);
    for (auto& x : tables[v]) x += s;
    EXPECT_EQ(dp_optimum(in.graph, CostModel(tables)), dp_optimum(in.graph, in.model) + ExtendedCost(s));
  }
}

TEST(Property, FactorOptimumZeroIffFactorExists) {
  Rng rng(103);
  int zero = 0;
  for (int i = 0; i < 100; ++i) {
    Graph g = small_random_graph(rng, 8, 25);
    auto sets = random_degree_sets(g.n(), rng);
    const bool exists = oracle::factor_exists(g, sets);
    const ExtendedCost opt = dp_optimum(g, from_factor(sets, g.n()));
    EXPECT_EQ(opt == ExtendedCost(0), exists) << "instance " << i;
    zero += exists ? 1 : 0;
  }
  // Both outcomes occur, so the identity is exercised both ways.
  EXPECT_GT(zero, 0);
  EXPECT_LT(zero, 100);
}

TEST(Property, IntervalModelsAgreeWithOracle) {
  Rng rng(104);
  for (int i = 0; i < 60; ++i) {
    Graph g = small_random_graph(rng, 8, 25);
    std::vector<int> lo(g.n()), hi(g.n());
    std::uniform_int_distribution<int> d(0, g.n() - 1);
    for (int v = 0; v < g.n(); ++v) {
      lo[v] = d(rng);
      hi[v] = std::max(lo[v], d(rng));
    }
    CostModel m = from_interval(lo, hi, g.n());
    EXPECT_EQ(dp_optimum(g, m), oracle::brute_force_solve(g, m).optimum);
  }
}

TEST(Property, PerfectMatchingOnCycles) {
  for (int n = 4; n <= 12; ++n) {
    CostModel m = from_b_matching(std::vector<int>(static_cast<std::size_t>(n), 1), n);
    EXPECT_EQ(dp_optimum(testing::cycle_graph(n), m), ExtendedCost(n % 2 == 0 ? 0 : 1)) << "C_" << n;
  }
}

ExtendedCost cubic_min(const Graph& g) {
  ExtendedCost best = ExtendedCost::infinity();
  for (Vertex i = 0; i < g.n(); ++i) best = std::min(best, dp_optimum(g, cubic_gadget(i, g.n())));
  return best;
}

TEST(Property, CubicGadgetIdentity) {
  EXPECT_EQ(cubic_min(testing::complete_graph(4)), ExtendedCost(0));
  Rng rng(105);
  std::uniform_int_distribution<int> size(4, 8);
  std::uniform_real_distribution<double> density(0.3, 0.9);
  int found = 0;
  for (int i = 0; i < 50; ++i) {
    Graph g;
    do {
      g = random_gnp(size(rng), density(rng), rng);
    } while (g.edge_count() > 25);
    const bool exists = oracle::cubic_subgraph_exists(g);
    EXPECT_EQ(cubic_min(g) == ExtendedCost(0), exists) << "instance " << i;
    found += exists ? 1 : 0;
  }
  EXPECT_GT(found, 0);
  EXPECT_LT(found, 50);
}

TEST(Property, DecompositionsAreValid) {
  Rng rng(106);
  std::uniform_int_distribution<int> size(1, 20);
  for (int i = 0; i < 200; ++i) {
    Graph g = random_gnp(size(rng), 0.3, rng);
    MinFillResult mf = min_fill_decompose(g);
    EXPECT_TRUE(validate_td(g, mf.td).empty()) << "graph " << i;
    NiceDecomposition ntd = to_nice(mf.td, g);
    EXPECT_TRUE(validate_nice(g, ntd, mf.td.width()).empty()) << "graph " << i;
    EXPECT_EQ(ntd.width(), mf.td.width());
  }
}

TEST(Property, KTreesHaveExactWidth) {
  for (int k = 1; k <= 4; ++k) {
    for (int n = k + 1; n <= 50; n += 7) {
      Graph g = generate({GraphKind::KTree, n, k, static_cast<std::uint64_t>(31 * n + k)});
      MinFillResult mf = min_fill_decompose(g);
      EXPECT_EQ(mf.report.width, k) << "k=" << k << " n=" << n;
      EXPECT_TRUE(validate_td(g, mf.td).empty());
      NiceDecomposition ntd = to_nice(mf.td, g);
      EXPECT_TRUE(validate_nice(g, ntd, k).empty());
    }
  }
}

TEST(Property, StateCountsWithinBound) {
  Rng rng(107);
  for (int i = 0; i < 40; ++i) {
    Graph g = generate({GraphKind::SeriesParallel, 25, 1, static_cast<std::uint64_t>(i + 1)});
    NiceDecomposition ntd = to_nice(min_fill_decompose(g).td, g);
    SolveResult r = solve(g, random_costs(g.n(), -9, 9, rng), ntd);
    StateCountReport rep = state_count_report(r, ntd);
    for (const NodeStateCount& c : rep.nodes) EXPECT_LE(c.stored, c.bound);
    EXPECT_LE(rep.total_stored, rep.total_bound);
  }
}

}  // namespace
}  // namespace degseq
