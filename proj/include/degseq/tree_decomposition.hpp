#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "degseq/graph.hpp"

namespace degseq {

// One failed decomposition axiom. `kind` is a short stable tag, `detail`
// names the vertex, edge or nodes responsible (1-based ids).
struct Violation {
  std::string kind;
  std::string detail;

  std::string to_string() const { return kind + ": " + detail; }
};

// Unrooted tree decomposition. Bags hold sorted 0-based vertices; tree edges
// are pairs of bag indices.
struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<int, int>> tree_edges;

  // max |bag| - 1, or -1 without bags.
  int width() const;
};

struct WidthReport {
  int width = -1;
  std::map<std::size_t, std::size_t> bag_size_histogram;  // size -> count
  std::size_t node_count = 0;
};

WidthReport width_report(const TreeDecomposition& td);

// Checks that the tree edges form a tree, that every vertex and every edge of
// g is covered by a bag, and that the bags containing any vertex form a
// connected subtree. An empty result means the decomposition is valid.
std::vector<Violation> validate_td(const Graph& g, const TreeDecomposition& td);

struct MinFillResult {
  TreeDecomposition td;
  WidthReport report;
  std::vector<Vertex> elimination_order;
};

// Elimination-ordering heuristic: repeatedly eliminate the vertex whose
// neighborhood needs the fewest fill edges, smallest id first on ties. Bag t
// is the t-th eliminated vertex plus its neighbors at that moment; bags
// contained in a neighboring bag are then contracted away. Bag 0 is the
// bag of the last eliminated vertex. Exact on chordal graphs.
MinFillResult min_fill_decompose(const Graph& g);

}  // namespace degseq
