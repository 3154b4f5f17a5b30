#include <gtest/gtest.h>

#include <climits>

#include "degseq/cost_model.hpp"
#include "degseq/errors.hpp"
#include "degseq/oracle.hpp"
#include "degseq/pipeline.hpp"
#include "test_support.hpp"

namespace degseq {
namespace {

using testing::cycle_graph;
using testing::path_graph;

TEST(ExtendedCost, InfinityAbsorbsAndOrders) {
  const ExtendedCost inf = ExtendedCost::infinity();
  EXPECT_FALSE(inf.is_finite());
  EXPECT_EQ(ExtendedCost(5) + inf, inf);
  EXPECT_EQ(inf + inf, inf);
  EXPECT_EQ(ExtendedCost(5) + ExtendedCost(-7), ExtendedCost(-2));
  EXPECT_LT(ExtendedCost(INT64_MAX), inf);
  EXPECT_LT(ExtendedCost(-3), ExtendedCost(2));
  EXPECT_EQ(inf.to_string(), "inf");
  EXPECT_THROW(inf.value(), InvariantError);
  EXPECT_THROW(ExtendedCost(INT64_MAX) + ExtendedCost(1), InvariantError);
}

TEST(CostModel, ChecksTableLengthAndMagnitude) {
  EXPECT_THROW(CostModel({{0, 1}, {0}}), InputError);
  EXPECT_THROW(CostModel({{std::int64_t{1} << 61, 0}, {0, 0}}), InputError);
  EXPECT_NO_THROW(CostModel({{(std::int64_t{1} << 60) - 1, 0}, {0, 0}}));
  CostModel m({{3, 1}, {0, -2}});
  EXPECT_EQ(m.n(), 2);
  EXPECT_EQ(m(1, 1), -2);
  EXPECT_EQ(m.max_abs_entry(), 3);
}

TEST(Evaluate, TriangleAllEdges) {
  Graph g = testing::complete_graph(3);
  SubgraphSolution sol(g, g.edges());
  EXPECT_EQ(evaluate(testing::minus_x(3), sol), ExtendedCost(-6));
}

TEST(Evaluate, EmptySolutionSumsZeroColumn) {
  Graph g = path_graph(3);
  CostModel m({{4, 0, 0}, {-1, 0, 0}, {2, 0, 0}});
  EXPECT_EQ(evaluate(m, SubgraphSolution(g)), ExtendedCost(5));
}

TEST(Evaluate, PathWithAbsTarget) {
  Graph g = path_graph(3);
  SubgraphSolution sol(g, g.edges());
  EXPECT_EQ(evaluate(from_b_matching({1, 1, 1}, 3), sol), ExtendedCost(1));
}

TEST(Evaluate, DimensionMismatch) {
  Graph g = path_graph(3);
  EXPECT_THROW(evaluate(testing::minus_x(2), SubgraphSolution(g)), InputError);
}

TEST(FromFactor, TablesAndErrors) {
  EXPECT_EQ(factor_table({1}, 3), (std::vector<std::int64_t>{1, 0, 1}));
  EXPECT_EQ(factor_table({0, 1, 2}, 3), (std::vector<std::int64_t>{0, 0, 0}));
  EXPECT_THROW(factor_table({}, 3), InputError);
  EXPECT_THROW(factor_table({3}, 3), InputError);
  EXPECT_THROW(from_factor({{1}, {1}}, 3), InputError);
}

TEST(FromFactor, FullSetsGiveZero) {
  Graph g = testing::complete_graph(4);
  CostModel m = from_factor({{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}}, 4);
  EXPECT_EQ(dp_optimum(g, m), ExtendedCost(0));
}

TEST(FromFactor, PathsWithPerfectMatchingSets) {
  EXPECT_EQ(dp_optimum(path_graph(3), from_factor({{1}, {1}, {1}}, 3)), ExtendedCost(1));
  EXPECT_EQ(dp_optimum(path_graph(4), from_factor({{1}, {1}, {1}, {1}}, 4)), ExtendedCost(0));
}

TEST(FromInterval, TablesAndErrors) {
  EXPECT_EQ(interval_table(1, 2, 4), (std::vector<std::int64_t>{1, 0, 0, 1}));
  EXPECT_EQ(interval_table(0, 3, 4), (std::vector<std::int64_t>{0, 0, 0, 0}));
  EXPECT_THROW(interval_table(2, 1, 4), InputError);
  EXPECT_THROW(interval_table(0, 4, 4), InputError);
  EXPECT_THROW(from_interval({0}, {1, 1}, 2), InputError);
}

TEST(FromInterval, FiveCycleIsTwoRegular) {
  EXPECT_EQ(dp_optimum(cycle_graph(5), from_interval({2, 2, 2, 2, 2}, {2, 2, 2, 2, 2}, 5)), ExtendedCost(0));
}

TEST(FromBMatching, CyclesAndZeroTargets) {
  EXPECT_EQ(dp_optimum(cycle_graph(4), from_b_matching({1, 1, 1, 1}, 4)), ExtendedCost(0));
  EXPECT_EQ(dp_optimum(cycle_graph(5), from_b_matching({1, 1, 1, 1, 1}, 5)), ExtendedCost(1));
  RunReport r = run_pipeline(cycle_graph(5), from_b_matching({0, 0, 0, 0, 0}, 5));
  EXPECT_EQ(r.optimum, ExtendedCost(0));
  EXPECT_TRUE(r.solution.empty());
  EXPECT_THROW(from_b_matching({5, 0, 0, 0, 0}, 5), InputError);
  EXPECT_THROW(from_b_matching({-1, 0}, 2), InputError);
}

TEST(FromBMatching, MatchesIntervalExhaustively) {
  for (int n = 1; n <= 12; ++n) {
    for (int b = 0; b < n; ++b) {
      std::vector<int> t(static_cast<std::size_t>(n), b);
      EXPECT_EQ(from_b_matching(t, n), from_interval(t, t, n)) << "n=" << n << " b=" << b;
    }
  }
}

TEST(CubicGadget, Tables) {
  EXPECT_EQ(cubic_main_table(4), (std::vector<std::int64_t>{9, 4, 1, 0}));
  EXPECT_EQ(cubic_other_table(5), (std::vector<std::int64_t>{0, 4, 2, 0, 4}));
  CostModel m = cubic_gadget(2, 4);
  EXPECT_EQ(m.table(2), cubic_main_table(4));
  EXPECT_EQ(m.table(0), cubic_other_table(4));
  EXPECT_THROW(cubic_gadget(0, 3), InputError);
  EXPECT_THROW(cubic_gadget(4, 4), InputError);
}

TEST(CubicGadget, CompleteFourGraphIsCubic) {
  Graph k4 = testing::complete_graph(4);
  for (Vertex i = 0; i < 4; ++i) EXPECT_EQ(dp_optimum(k4, cubic_gadget(i, 4)), ExtendedCost(0));
}

// The three-vertex path is below the gadget's size limit, so the tables are
// built by hand. A single edge at the special endpoint costs 4 + 4 + 0, which
// beats the empty subgraph's 9.
TEST(CubicGadget, ThreePathWithHandTables) {
  CostModel m({{9, 4, 1}, {0, 4, 2}, {0, 4, 2}});
  EXPECT_EQ(dp_optimum(path_graph(3), m), ExtendedCost(8));
  EXPECT_EQ(oracle::brute_force_solve(path_graph(3), m).optimum, ExtendedCost(8));
}

}  // namespace
}  // namespace degseq
