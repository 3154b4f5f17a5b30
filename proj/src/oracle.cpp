#include "degseq/oracle.hpp"

#include <algorithm>
#include <string>

#include "degseq/errors.hpp"

namespace degseq::oracle {

namespace {

void guard(std::size_t edges, std::size_t limit, const char* what) {
  if (edges > limit) {
    throw InputError(std::string(what) + ": " + std::to_string(edges) + " edges exceeds the oracle limit of " +
                     std::to_string(limit));
  }
}

// Visits every subset of `edges` in binary counting order, keeping `deg`
// current. Binary increments flip two bits on average, so each step is O(1)
// amortized. `visit(mask)` returns false to stop early.
template <typename OnFlip, typename Visit>
void for_each_subset(const std::vector<Edge>& edges, std::vector<int>& deg, OnFlip on_flip, Visit visit) {
  const std::size_t m = edges.size();
  std::uint64_t mask = 0;
  const std::uint64_t end = std::uint64_t{1} << m;
  while (true) {
    if (!visit(mask)) return;
    if (mask + 1 == end) return;
    // Clear trailing ones, then set the next zero bit.
    std::uint64_t next = mask + 1;
    std::uint64_t flipped = mask ^ next;
    for (; flipped; flipped &= flipped - 1) {
      const int j = __builtin_ctzll(flipped);
      const int delta = (next >> j & 1U) ? 1 : -1;
      const Edge& e = edges[j];
      on_flip(e.u, deg[e.u], deg[e.u] + delta);
      deg[e.u] += delta;
      on_flip(e.v, deg[e.v], deg[e.v] + delta);
      deg[e.v] += delta;
    }
    mask = next;
  }
}

}  // namespace

OracleResult brute_force_solve(const Graph& g, const CostModel& model) {
  guard(g.edge_count(), kMaxSolveEdges, "brute_force_solve");
  if (model.n() != g.n()) throw InputError("cost model and graph differ in vertex count");
  const int n = g.n();
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  std::int64_t cost = 0;
  for (int i = 0; i < n; ++i) cost += model(i, 0);

  std::int64_t best = cost;
  std::uint64_t best_mask = 0;
  for_each_subset(
      g.edges(), deg, [&](Vertex v, int from, int to) { cost += model(v, to) - model(v, from); },
      [&](std::uint64_t mask) {
        if (cost < best) {
          best = cost;
          best_mask = mask;
        }
        return true;
      });

  OracleResult r{best, {}};
  for (std::size_t j = 0; j < g.edge_count(); ++j)
    if (best_mask >> j & 1U) r.witness.push_back(g.edges()[j]);
  return r;
}

std::map<std::pair<std::vector<int>, std::uint64_t>, std::int64_t> brute_force_node_table(
    const Graph& g, const NiceDecomposition& ntd, int node, const CostModel& model) {
  const VertexSet& cone = ntd.cone(node);
  const std::vector<Vertex>& bag = ntd.node(node).bag;

  std::vector<Edge> cone_edges;
  for (const Edge& e : g.edges())
    if (cone.test(static_cast<std::size_t>(e.u)) && cone.test(static_cast<std::size_t>(e.v))) cone_edges.push_back(e);
  guard(cone_edges.size(), kMaxStateEdges, "brute_force_state");

  std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t a = 0; a < bag.size(); ++a) pos[bag[a]] = static_cast<int>(a);
  // Bag-induced H-edges in lexicographic order of bag positions; since the
  // bag is sorted that is the canonical edge order restricted to the bag.
  std::vector<int> bag_bit(cone_edges.size(), -1);
  int bits = 0;
  for (std::size_t j = 0; j < cone_edges.size(); ++j)
    if (pos[cone_edges[j].u] >= 0 && pos[cone_edges[j].v] >= 0) bag_bit[j] = bits++;

  std::vector<Vertex> cone_vertices;
  for (auto v = cone.find_first(); v != VertexSet::npos; v = cone.find_next(v))
    cone_vertices.push_back(static_cast<Vertex>(v));

  std::map<std::pair<std::vector<int>, std::uint64_t>, std::int64_t> table;
  std::vector<int> deg(static_cast<std::size_t>(g.n()), 0);
  std::vector<int> bag_deg(bag.size());
  for_each_subset(
      cone_edges, deg, [](Vertex, int, int) {},
      [&](std::uint64_t mask) {
        std::int64_t cost = 0;
        for (Vertex v : cone_vertices) cost += model(v, deg[v]);
        std::uint64_t f = 0;
        for (std::size_t j = 0; j < cone_edges.size(); ++j)
          if ((mask >> j & 1U) && bag_bit[j] >= 0) f |= std::uint64_t{1} << bag_bit[j];
        for (std::size_t a = 0; a < bag.size(); ++a) bag_deg[a] = deg[bag[a]];
        auto [it, fresh] = table.try_emplace({bag_deg, f}, cost);
        if (!fresh) it->second = std::min(it->second, cost);
        return true;
      });
  return table;
}

ExtendedCost brute_force_state(const Graph& g, const NiceDecomposition& ntd, int node, const BagState& state,
                               const CostModel& model) {
  auto table = brute_force_node_table(g, ntd, node, model);
  auto it = table.find({state.degrees, state.edge_mask});
  return it == table.end() ? ExtendedCost::infinity() : ExtendedCost(it->second);
}

bool cubic_subgraph_exists(const Graph& g) {
  guard(g.edge_count(), kMaxSolveEdges, "cubic_subgraph_exists");
  std::vector<int> deg(static_cast<std::size_t>(g.n()), 0);
  // Vertices whose degree is neither 0 nor 3.
  int bad = 0;
  auto off = [](int d) { return d != 0 && d != 3; };
  bool found = false;
  for_each_subset(
      g.edges(), deg, [&](Vertex, int from, int to) { bad += static_cast<int>(off(to)) - static_cast<int>(off(from)); },
      [&](std::uint64_t mask) {
        if (mask != 0 && bad == 0) found = true;
        return !found;
      });
  return found;
}

bool factor_exists(const Graph& g, const std::vector<std::vector<int>>& sets) {
  guard(g.edge_count(), kMaxSolveEdges, "factor_exists");
  const int n = g.n();
  if (static_cast<int>(sets.size()) != n) throw InputError("one degree set per vertex required");
  std::vector<std::vector<char>> allowed(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n) + 1, 0));
  for (int i = 0; i < n; ++i)
    for (int b : sets[i])
      if (b >= 0 && b <= n) allowed[i][b] = 1;
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  int bad = 0;
  for (int i = 0; i < n; ++i) bad += allowed[i][0] ? 0 : 1;
  bool found = false;
  for_each_subset(
      g.edges(), deg,
      [&](Vertex v, int from, int to) { bad += static_cast<int>(!allowed[v][to]) - static_cast<int>(!allowed[v][from]); },
      [&](std::uint64_t) {
        found = bad == 0;
        return !found;
      });
  return found;
}

}  // namespace degseq::oracle
