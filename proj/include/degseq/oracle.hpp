#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "degseq/cost_model.hpp"
#include "degseq/dp_solver.hpp"
#include "degseq/graph.hpp"
#include "degseq/nice_decomposition.hpp"

// Exhaustive reference solvers. They enumerate edge subsets directly and share
// no code with the dynamic program beyond the input types.
namespace degseq::oracle {

inline constexpr std::size_t kMaxSolveEdges = 25;
inline constexpr std::size_t kMaxStateEdges = 20;

struct OracleResult {
  ExtendedCost optimum;
  std::vector<Edge> witness;  // canonical order
};

// Minimum of sum f_i(d_i(G)) over all 2^|E| subgraphs. Subsets are visited as
// binary numbers over the canonical edge list (bit j = edges()[j]); the
// witness is the first optimum in that order. Throws InputError above
// kMaxSolveEdges edges.
OracleResult brute_force_solve(const Graph& g, const CostModel& model);

// g(v, c, F) from its definition: the minimum of sum_{i in I(T_v)} f_i(d_i(G))
// over G subset of H[I(T_v)] with E(G[I_v]) = F and d_i(G) = c(i) on the bag.
// The state is read in the bag-layout convention (degrees in bag order, F as a
// mask over the bag-induced H-edges in lexicographic order). Infinity when no
// G qualifies. Throws InputError above kMaxStateEdges cone edges.
ExtendedCost brute_force_state(const Graph& g, const NiceDecomposition& ntd, int node, const BagState& state,
                               const CostModel& model);

// Every feasible state of `node` with its exact value, found by one pass over
// all subgraphs of H[I(T_v)]. Keys are (bag degrees, bag edge mask).
std::map<std::pair<std::vector<int>, std::uint64_t>, std::int64_t> brute_force_node_table(
    const Graph& g, const NiceDecomposition& ntd, int node, const CostModel& model);

// True iff some nonempty edge subset has every degree in {0, 3}.
// Throws InputError above kMaxSolveEdges edges.
bool cubic_subgraph_exists(const Graph& g);

// True iff some G has d_i(G) in sets[i] for all i. Throws above kMaxSolveEdges.
bool factor_exists(const Graph& g, const std::vector<std::vector<int>>& sets);

}  // namespace degseq::oracle
