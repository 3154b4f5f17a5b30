#include <gtest/gtest.h>

#include <algorithm>

#include "degseq/dp_solver.hpp"
#include "degseq/errors.hpp"
#include "degseq/generators.hpp"
#include "degseq/oracle.hpp"
#include "degseq/pipeline.hpp"
#include "degseq/tree_decomposition.hpp"
#include "test_support.hpp"

namespace degseq {
namespace {

using testing::complete_graph;
using testing::cycle_graph;
using testing::one_based;
using testing::path_graph;

NiceDecomposition nice_for(const Graph& g) { return to_nice(min_fill_decompose(g).td, g); }

std::vector<Vertex> bag(std::initializer_list<Vertex> vs) { return vs; }

bool same_tables(const StateTable& a, const StateTable& b) {
  return a.layout() == b.layout() && std::ranges::equal(a.keys(), b.keys()) &&
         std::ranges::equal(a.values(), b.values()) && std::ranges::equal(a.choices(), b.choices());
}

// --- BagLayout -------------------------------------------------------------

TEST(BagLayout, EncodeDecodeAndOrder) {
  Graph g = complete_graph(3);
  CostModel model = testing::minus_x(3);
  DpContext ctx(g, model);
  BagLayout l = ctx.layout({0, 2});
  EXPECT_EQ(l.edge_count(), 1);
  EXPECT_EQ(l.host_edge(0), (Edge{0, 2}));
  EXPECT_EQ(l.degree_space(), 9u);
  EXPECT_EQ(l.state_space(), 18u);
  BagState s{{2, 1}, 1};
  EXPECT_EQ(l.decode(l.encode(s)), s);
  // First bag vertex is most significant, the mask least.
  EXPECT_LT(l.encode(BagState{{0, 2}, 1}), l.encode(BagState{{1, 0}, 0}));
  EXPECT_LT(l.encode(BagState{{1, 0}, 0}), l.encode(BagState{{1, 0}, 1}));
  EXPECT_FALSE(l.admits(BagState{{3, 0}, 0}));
  EXPECT_FALSE(l.admits(BagState{{0, 0}, 2}));
  EXPECT_FALSE(l.admits(BagState{{0}, 0}));
  EXPECT_EQ(l.position(2), 1);
  EXPECT_EQ(l.position(1), -1);
  EXPECT_EQ(l.edge_position(1, 0), 0);
}

TEST(BagLayout, KeyMustFitSixtyThreeBits) {
  Graph g = complete_graph(12);
  CostModel model = testing::minus_x(12);
  DpContext ctx(g, model);
  std::vector<Vertex> all(12);
  for (int i = 0; i < 12; ++i) all[i] = i;
  EXPECT_THROW(ctx.layout(all), InputError);
}

TEST(DpContext, CapsFollowPolicy) {
  Graph g = one_based(4, {{1, 2}, {1, 3}});
  CostModel m = testing::minus_x(4);
  EXPECT_EQ(DpContext(g, m).caps(), (std::vector<int>{2, 1, 1, 0}));
  EXPECT_EQ(DpContext(g, m, CapPolicy::FullRange).caps(), (std::vector<int>{3, 3, 3, 3}));
  const CostModel small = testing::minus_x(3);
  EXPECT_THROW(DpContext(g, small), InputError);
}

// --- Leaf ------------------------------------------------------------------

TEST(HandleLeaf, SingleZeroState) {
  Graph g = path_graph(2);
  CostModel model = testing::minus_x(2);
  DpContext ctx(g, model);
  StateTable t = handle_leaf(ctx, {});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.lookup(BagState{}), ExtendedCost(0));
  EXPECT_TRUE(std::holds_alternative<LeafBase>(t.choices()[0]));
  EXPECT_TRUE(same_tables(t, handle_leaf(ctx, {})));
  EXPECT_THROW(handle_leaf(ctx, bag({0})), InvariantError);
}

// --- Introduce -------------------------------------------------------------

TEST(HandleIntroduce, IntoLeaf) {
  Graph g = path_graph(2);
  CostModel m({{5, 3}, {0, 0}});
  DpContext ctx(g, m);
  StateTable t = handle_introduce(ctx, bag({0}), 0, handle_leaf(ctx, {}));
  EXPECT_EQ(t.lookup(BagState{{0}, 0}), ExtendedCost(5));
  // The introduced vertex has no bag edges yet.
  EXPECT_EQ(t.lookup(BagState{{1}, 0}), ExtendedCost::infinity());
  EXPECT_EQ(t.size(), 1u);
}

TEST(HandleIntroduce, NegativeChildDegreeIsInfinite) {
  Graph g = path_graph(2);
  CostModel m({{0, 7}, {1, 20}});
  DpContext ctx(g, m);
  StateTable child(ctx.layout({1}));
  child.insert(BagState{{0}, 0}, 1);
  StateTable t = handle_introduce(ctx, bag({0, 1}), 0, child);
  // c(1)=1 with F={{1,2}} needs c_u(2) = 0 - 1.
  EXPECT_EQ(t.lookup(BagState{{1, 0}, 1}), ExtendedCost::infinity());
  // c=(1,1), F={{1,2}}: g_u(0) - f_2(0) + f_1(1) + f_2(1) = 1 - 1 + 7 + 20.
  EXPECT_EQ(t.lookup(BagState{{1, 1}, 1}), ExtendedCost(27));
  EXPECT_EQ(t.lookup(BagState{{0, 0}, 0}), ExtendedCost(1));
  EXPECT_EQ(t.size(), 2u);
  auto i = t.find(t.layout().encode(BagState{{1, 1}, 1}));
  ASSERT_TRUE(i);
  EXPECT_EQ(std::get<IntroduceFrom>(t.choices()[*i]).added_edges, 1u);
}

TEST(HandleIntroduce, StructuralMismatch) {
  Graph g = path_graph(3);
  CostModel model = testing::minus_x(3);
  DpContext ctx(g, model);
  StateTable child(ctx.layout({1}));
  child.insert(BagState{{0}, 0}, 0);
  EXPECT_THROW(handle_introduce(ctx, bag({0, 2}), 0, child), InvariantError);
  EXPECT_THROW(handle_introduce(ctx, bag({0, 1}), 1, child), InvariantError);
}

// --- Forget ----------------------------------------------------------------

TEST(HandleForget, PlainMinimum) {
  Graph g = one_based(3, {{1, 2}, {1, 3}});
  CostModel model = testing::minus_x(3);
  DpContext ctx(g, model);
  StateTable child(ctx.layout({0}));
  child.insert(BagState{{0}, 0}, 5);
  child.insert(BagState{{1}, 0}, 2);
  child.insert(BagState{{2}, 0}, 7);
  for (TableMethod method : {TableMethod::Auto, TableMethod::Direct}) {
    StateTable t = handle_forget(ctx, {}, 0, child, method);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t.lookup(BagState{}), ExtendedCost(2));
    EXPECT_EQ(std::get<ForgetFrom>(t.choices()[0]).child, 1u);
  }
}

TEST(HandleForget, EmptyChildGivesEmptyTable) {
  Graph g = path_graph(2);
  CostModel model = testing::minus_x(2);
  DpContext ctx(g, model);
  StateTable t = handle_forget(ctx, {}, 0, StateTable(ctx.layout({0})));
  EXPECT_EQ(t.size(), 0u);
  EXPECT_EQ(t.lookup(BagState{}), ExtendedCost::infinity());
}

TEST(HandleForget, RangesOverBothEdgeSets) {
  Graph g = path_graph(2);
  CostModel model = testing::minus_x(2);
  DpContext ctx(g, model);
  StateTable child(ctx.layout({0, 1}));
  child.insert(BagState{{0, 0}, 0}, 4);
  child.insert(BagState{{1, 0}, 0}, 3);
  child.insert(BagState{{1, 1}, 1}, 1);
  for (TableMethod method : {TableMethod::Auto, TableMethod::Direct}) {
    StateTable t = handle_forget(ctx, bag({1}), 0, child, method);
    EXPECT_EQ(t.lookup(BagState{{0}, 0}), ExtendedCost(3));
    EXPECT_EQ(t.lookup(BagState{{1}, 0}), ExtendedCost(1));
  }
}

TEST(HandleForget, TiesGoToFirstChildKey) {
  Graph g = path_graph(2);
  CostModel model = testing::minus_x(2);
  DpContext ctx(g, model);
  StateTable child(ctx.layout({0, 1}));
  child.insert(BagState{{0, 1}, 0}, 6);
  child.insert(BagState{{1, 1}, 1}, 6);
  StateTable t = handle_forget(ctx, bag({1}), 0, child);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(std::get<ForgetFrom>(t.choices()[0]).child, 0u);
}

TEST(HandleForget, StructuralMismatch) {
  Graph g = path_graph(3);
  CostModel model = testing::minus_x(3);
  DpContext ctx(g, model);
  StateTable child(ctx.layout({0, 1}));
  EXPECT_THROW(handle_forget(ctx, bag({0}), 2, child), InvariantError);
  EXPECT_THROW(handle_forget(ctx, bag({2}), 0, child), InvariantError);
}

// --- Join ------------------------------------------------------------------

TEST(HandleJoin, HandEnumeratedDecompositions) {
  Graph g = one_based(3, {{1, 2}, {1, 3}});
  CostModel m({{0, 10, 2}, {0, 0, 0}, {0, 0, 0}});
  DpContext ctx(g, m);
  StateTable u(ctx.layout({0}));
  u.insert(BagState{{0}, 0}, 0);
  u.insert(BagState{{1}, 0}, 4);
  StateTable w(ctx.layout({0}));
  w.insert(BagState{{0}, 0}, 0);
  w.insert(BagState{{1}, 0}, 1);
  w.insert(BagState{{2}, 0}, 3);
  for (TableMethod method : {TableMethod::Auto, TableMethod::Direct}) {
    StateTable t = handle_join(ctx, bag({0}), u, w, method);
    EXPECT_EQ(t.lookup(BagState{{2}, 0}), ExtendedCost(-13));
    EXPECT_EQ(t.lookup(BagState{{1}, 0}), ExtendedCost(1));
    EXPECT_EQ(t.lookup(BagState{{0}, 0}), ExtendedCost(0));
    auto i = t.find(t.layout().encode(BagState{{2}, 0}));
    ASSERT_TRUE(i);
    EXPECT_EQ(std::get<JoinFrom>(t.choices()[*i]), (JoinFrom{1, 1}));
  }
}

TEST(HandleJoin, ZeroStatesOnly) {
  Graph g = path_graph(2);
  CostModel m({{0, 3}, {0, 3}});
  DpContext ctx(g, m);
  StateTable u(ctx.layout({0}));
  u.insert(BagState{{0}, 0}, 0);
  StateTable t = handle_join(ctx, bag({0}), u, u);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.lookup(BagState{{0}, 0}), ExtendedCost(0));
}

TEST(HandleJoin, EdgeGoesToExactlyOneSide) {
  Graph g = path_graph(2);
  CostModel m({{0, 0}, {0, 0}});
  DpContext ctx(g, m);
  StateTable with_edge(ctx.layout({0, 1}));
  with_edge.insert(BagState{{0, 0}, 0}, 0);
  with_edge.insert(BagState{{1, 1}, 1}, 5);
  StateTable without(ctx.layout({0, 1}));
  without.insert(BagState{{0, 0}, 0}, 2);
  for (TableMethod method : {TableMethod::Auto, TableMethod::Direct}) {
    StateTable lr = handle_join(ctx, bag({0, 1}), with_edge, without, method);
    EXPECT_EQ(lr.lookup(BagState{{1, 1}, 1}), ExtendedCost(7));
    StateTable rl = handle_join(ctx, bag({0, 1}), without, with_edge, method);
    EXPECT_EQ(rl.lookup(BagState{{1, 1}, 1}), ExtendedCost(7));
    // Both sides holding the edge is not a partition.
    StateTable both = handle_join(ctx, bag({0, 1}), with_edge, with_edge, method);
    EXPECT_EQ(both.lookup(BagState{{1, 1}, 1}), ExtendedCost(5));
    EXPECT_EQ(both.size(), 2u);
  }
}

TEST(HandleJoin, StructuralMismatch) {
  Graph g = path_graph(3);
  CostModel model = testing::minus_x(3);
  DpContext ctx(g, model);
  StateTable a(ctx.layout({0, 1}));
  StateTable b(ctx.layout({1, 2}));
  EXPECT_THROW(handle_join(ctx, bag({0, 1}), a, b), InvariantError);
}

TEST(Handlers, RejectReleasedChild) {
  Graph g = path_graph(2);
  CostModel model = testing::minus_x(2);
  DpContext ctx(g, model);
  StateTable t = handle_introduce(ctx, bag({0}), 0, handle_leaf(ctx, {}));
  t.release_values();
  EXPECT_FALSE(t.has_values());
  EXPECT_EQ(t.size(), 1u);
  EXPECT_THROW(handle_forget(ctx, {}, 0, t), InvariantError);
  EXPECT_THROW(t.lookup(BagState{{0}, 0}), InvariantError);
}

// --- solve / reconstruct ---------------------------------------------------

TEST(Solve, TriangleMinusX) {
  Graph g = complete_graph(3);
  NiceDecomposition ntd = nice_for(g);
  SolveResult r = solve(g, testing::minus_x(3), ntd);
  EXPECT_EQ(r.optimum, ExtendedCost(-6));
  SubgraphSolution sol = reconstruct(r, ntd, g);
  EXPECT_EQ(sol.edges(), g.edges());
}

TEST(Solve, EdgelessGraph) {
  Graph g = one_based(3, {});
  CostModel m({{4, 0, 0}, {-2, 0, 0}, {7, 0, 0}});
  NiceDecomposition ntd = nice_for(g);
  SolveResult r = solve(g, m, ntd);
  EXPECT_EQ(r.optimum, ExtendedCost(9));
  EXPECT_TRUE(reconstruct(r, ntd, g).edges().empty());
}

TEST(Solve, PerfectMatchings) {
  Graph p4 = path_graph(4);
  EXPECT_EQ(solve(p4, from_b_matching({1, 1, 1, 1}, 4), nice_for(p4)).optimum, ExtendedCost(0));

  Graph c4 = cycle_graph(4);
  CostModel m = from_b_matching({1, 1, 1, 1}, 4);
  NiceDecomposition ntd = nice_for(c4);
  SolveResult r = solve(c4, m, ntd);
  SubgraphSolution sol = reconstruct(r, ntd, c4);
  EXPECT_EQ(evaluate(m, sol), ExtendedCost(0));
  EXPECT_EQ(sol.edges().size(), 2u);
  EXPECT_EQ(degrees(sol), (std::vector<int>{1, 1, 1, 1}));
}

TEST(Solve, RootHoldsOneFiniteState) {
  Graph g = generate({GraphKind::KTree, 12, 3, 5, 0.5});
  NiceDecomposition ntd = nice_for(g);
  Rng rng(5);
  SolveResult r = solve(g, random_costs(12, -9, 9, rng), ntd);
  ASSERT_EQ(r.tables[ntd.root()].size(), 1u);
  EXPECT_TRUE(r.optimum.is_finite());
}

TEST(Solve, Errors) {
  Graph g = path_graph(3);
  NiceDecomposition ntd = nice_for(g);
  EXPECT_THROW(solve(g, testing::minus_x(4), ntd), InputError);
  NiceDecomposition other = nice_for(path_graph(4));
  EXPECT_THROW(solve(g, testing::minus_x(3), other), InputError);
}

TEST(Solve, ReleasedValuesStillReconstruct) {
  Graph g = generate({GraphKind::SeriesParallel, 10, 1, 4, 0.5});
  Rng rng(4);
  CostModel m = random_costs(10, -9, 9, rng);
  NiceDecomposition ntd = nice_for(g);
  SolveOptions opts;
  opts.retain_values = false;
  SolveResult r = solve(g, m, ntd, opts);
  EXPECT_FALSE(r.tables[ntd.node(ntd.root()).children[0]].has_values());
  EXPECT_EQ(evaluate(m, reconstruct(r, ntd, g)), r.optimum);
  EXPECT_EQ(r.optimum, solve(g, m, ntd).optimum);
}

TEST(Reconstruct, DanglingChoice) {
  Graph g = path_graph(3);
  NiceDecomposition ntd = nice_for(g);
  SolveResult r = solve(g, testing::minus_x(3), ntd);
  const int below_root = ntd.node(ntd.root()).children[0];
  r.tables[below_root] = StateTable(r.tables[below_root].layout());
  EXPECT_THROW(reconstruct(r, ntd, g), InvariantError);
}

// --- state counts ----------------------------------------------------------

TEST(StateCount, PathsStayTiny) {
  for (int n : {100, 1000}) {
    Graph g = path_graph(n);
    NiceDecomposition ntd = nice_for(g);
    Rng rng(static_cast<std::uint64_t>(n));
    SolveResult r = solve(g, random_costs(n, -9, 9, rng), ntd);
    StateCountReport rep = state_count_report(r, ntd);
    EXPECT_LE(rep.max_stored, 18u);
    EXPECT_LE(rep.total_stored, rep.total_bound);
    for (const NodeStateCount& c : rep.nodes) {
      EXPECT_LE(c.stored, c.bound);
      if (c.kind == NodeKind::Leaf) {
        EXPECT_EQ(c.stored, 1u);
      }
    }
  }
}

TEST(StateCount, CompleteFourGraphBound) {
  Graph g = complete_graph(4);
  NiceDecomposition ntd = nice_for(g);
  SolveResult r = solve(g, testing::minus_x(4), ntd);
  StateCountReport rep = state_count_report(r, ntd);
  EXPECT_EQ(ntd.width(), 3);
  for (const NodeStateCount& c : rep.nodes) EXPECT_LE(c.stored, 256u * 64u);
  EXPECT_EQ(rep.nodes.size(), ntd.post_order().size());
}

// --- against the oracle ----------------------------------------------------

TEST(StateLevel, EveryNodeTableMatchesOracle) {
  Rng rng(2024);
  InstanceOptions opt;
  opt.max_n = 6;
  opt.max_edges = 12;
  for (int inst = 0; inst < 25; ++inst) {
    Instance in = random_instance(rng, opt);
    NiceDecomposition ntd = nice_for(in.graph);
    SolveResult r = solve(in.graph, in.model, ntd);
    for (int id : ntd.post_order()) {
      const StateTable& t = r.tables[id];
      auto expect = oracle::brute_force_node_table(in.graph, ntd, id, in.model);
      ASSERT_EQ(t.size(), expect.size()) << "instance " << inst << " node " << id;
      for (std::size_t i = 0; i < t.size(); ++i) {
        BagState s = t.state(i);
        auto it = expect.find({s.degrees, s.edge_mask});
        ASSERT_NE(it, expect.end()) << "instance " << inst << " node " << id;
        EXPECT_EQ(t.values()[i], it->second);
      }
    }
  }
}

TEST(StateLevel, SpotChecksAgainstStateOracle) {
  Graph g = cycle_graph(4);
  CostModel m({{3, -1, 2, 0}, {0, 1, -4, 0}, {2, 2, -1, 0}, {-3, 0, 5, 0}});
  NiceDecomposition ntd = nice_for(g);
  SolveResult r = solve(g, m, ntd);
  for (int id : ntd.post_order()) {
    const StateTable& t = r.tables[id];
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_EQ(oracle::brute_force_state(g, ntd, id, t.state(i), m), ExtendedCost(t.values()[i]));
    }
  }
}

TEST(CapPolicy, FullRangeAgrees) {
  Rng rng(77);
  InstanceOptions opt;
  opt.max_n = 7;
  opt.max_edges = 14;
  for (int inst = 0; inst < 30; ++inst) {
    Instance in = random_instance(rng, opt);
    NiceDecomposition ntd = nice_for(in.graph);
    SolveOptions full;
    full.caps = CapPolicy::FullRange;
    SolveResult a = solve(in.graph, in.model, ntd);
    SolveResult b = solve(in.graph, in.model, ntd, full);
    EXPECT_EQ(a.optimum, b.optimum);
    EXPECT_EQ(state_count_report(a, ntd).total_stored, state_count_report(b, ntd).total_stored);
  }
}

TEST(TableMethod, FactoredMatchesDirectExactly) {
  Rng rng(31);
  InstanceOptions opt;
  opt.max_n = 8;
  opt.max_edges = 18;
  for (int inst = 0; inst < 60; ++inst) {
    Instance in = random_instance(rng, opt);
    NiceDecomposition ntd = nice_for(in.graph);
    for (CapPolicy caps : {CapPolicy::HostDegree, CapPolicy::FullRange}) {
      SolveOptions a;
      a.caps = caps;
      SolveOptions d = a;
      d.method = TableMethod::Direct;
      SolveResult ra = solve(in.graph, in.model, ntd, a);
      SolveResult rd = solve(in.graph, in.model, ntd, d);
      for (int id : ntd.post_order()) ASSERT_TRUE(same_tables(ra.tables[id], rd.tables[id])) << inst << " " << id;
      EXPECT_EQ(reconstruct(ra, ntd, in.graph).edges(), reconstruct(rd, ntd, in.graph).edges());
    }
  }
}

// Recomputes one node with everything outside its bag changed: other cost
// tables and every host edge not inside the bag. Full-range caps keep the
// layout independent of host degrees.
TEST(Handlers, DependOnlyOnLocalData) {
  Rng rng(8);
  InstanceOptions opt;
  opt.min_n = 6;
  opt.max_n = 8;
  for (int inst = 0; inst < 10; ++inst) {
    Instance in = random_instance(rng, opt);
    NiceDecomposition ntd = nice_for(in.graph);
    SolveOptions full;
    full.caps = CapPolicy::FullRange;
    SolveResult r = solve(in.graph, in.model, ntd, full);
    for (int id : ntd.post_order()) {
      const NiceNode& nd = ntd.node(id);
      if (nd.kind == NodeKind::Leaf) continue;
      auto in_bag = [&](Vertex v) { return std::binary_search(nd.bag.begin(), nd.bag.end(), v); };
      std::vector<Edge> edges;
      for (Vertex a = 0; a < in.graph.n(); ++a)
        for (Vertex b = a + 1; b < in.graph.n(); ++b) {
          const bool inside = in_bag(a) && in_bag(b);
          if (inside ? in.graph.has_edge(a, b) : !in.graph.has_edge(a, b)) edges.push_back({a, b});
        }
      Graph mutated = Graph::from_edges(in.graph.n(), edges);
      auto tables = in.model.tables();
      for (Vertex v = 0; v < in.graph.n(); ++v)
        if (!in_bag(v))
          for (auto& x : tables[v]) x = 100 - x;
      CostModel other(tables);
      DpContext ctx(mutated, other, CapPolicy::FullRange);
      StateTable again;
      switch (nd.kind) {
        case NodeKind::Introduce:
          again = handle_introduce(ctx, nd.bag, nd.vertex, r.tables[nd.children[0]]);
          break;
        case NodeKind::Forget:
          // The child bag also holds the forgotten vertex, so its edges stay.
          again = handle_forget(DpContext(in.graph, other, CapPolicy::FullRange), nd.bag, nd.vertex,
                                r.tables[nd.children[0]]);
          break;
        case NodeKind::Join:
          again = handle_join(ctx, nd.bag, r.tables[nd.children[0]], r.tables[nd.children[1]]);
          break;
        case NodeKind::Leaf:
          break;
      }
      EXPECT_TRUE(same_tables(again, r.tables[id])) << "instance " << inst << " node " << id;
    }
  }
}

}  // namespace
}  // namespace degseq
