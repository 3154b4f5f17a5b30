#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace degseq {

// Vertices are 0-based internally. Everything that reads or writes text
// converts to and from the 1-based ids used by the file formats.
using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  // Canonical form: u < v.
  static Edge canonical(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Simple undirected graph on {0, ..., n-1}. Immutable once built.
class Graph {
 public:
  Graph() = default;

  // Builds a graph from 1-based endpoint pairs. Reversed duplicates collapse
  // into one edge. Throws InputError on loops, out-of-range ids or n < 0.
  static Graph from_one_based(int n, std::span<const std::pair<int, int>> edge_list);

  // Same, for 0-based pairs.
  static Graph from_edges(int n, std::span<const Edge> edge_list);

  int n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  // Sorted canonically (lexicographic on (u, v)).
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }

  bool has_edge(Vertex a, Vertex b) const;
  // Position of the edge in edges(), or -1.
  int edge_index(Vertex a, Vertex b) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

struct InducedSubgraph {
  Graph graph;
  // original[k] is the host vertex that became vertex k.
  std::vector<Vertex> original;
};

// H[S]. Vertices of the result are numbered in ascending order of their host
// id. Duplicates in `s` are ignored.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> s);

// A spanning subgraph G of a host H: same vertex set, chosen edges a subset of
// E(H). The host must outlive the solution.
class SubgraphSolution {
 public:
  explicit SubgraphSolution(const Graph& host) : host_(&host) {}
  // Throws InputError if an edge is not in the host.
  SubgraphSolution(const Graph& host, std::vector<Edge> chosen);

  const Graph& host() const { return *host_; }
  const std::vector<Edge>& edges() const { return chosen_; }

 private:
  const Graph* host_;
  std::vector<Edge> chosen_;  // canonical, sorted, unique
};

std::vector<int> degrees(const SubgraphSolution& sol);

}  // namespace degseq
