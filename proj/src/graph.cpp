#include "degseq/graph.hpp"

#include <algorithm>
#include <string>

#include "degseq/errors.hpp"

namespace degseq {

namespace {

std::string pair_text(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

}  // namespace

Graph Graph::from_one_based(int n, std::span<const std::pair<int, int>> edge_list) {
  if (n < 0) throw InputError("vertex count must be nonnegative, got " + std::to_string(n));
  std::vector<Edge> zero_based;
  zero_based.reserve(edge_list.size());
  for (std::size_t k = 0; k < edge_list.size(); ++k) {
    auto [a, b] = edge_list[k];
    if (a < 1 || a > n || b < 1 || b > n) {
      throw InputError("edge " + std::to_string(k) + " " + pair_text(a, b) + ": vertex out of range 1.." +
                       std::to_string(n));
    }
    if (a == b) throw InputError("edge " + std::to_string(k) + " " + pair_text(a, b) + ": loop");
    zero_based.push_back(Edge{a - 1, b - 1});
  }
  return from_edges(n, zero_based);
}

Graph Graph::from_edges(int n, std::span<const Edge> edge_list) {
  if (n < 0) throw InputError("vertex count must be nonnegative, got " + std::to_string(n));
  Graph g;
  g.n_ = n;
  g.edges_.reserve(edge_list.size());
  for (std::size_t k = 0; k < edge_list.size(); ++k) {
    const Edge& e = edge_list[k];
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw InputError("edge " + std::to_string(k) + " " + pair_text(e.u + 1, e.v + 1) + ": vertex out of range 1.." +
                       std::to_string(n));
    }
    if (e.u == e.v) throw InputError("edge " + std::to_string(k) + " " + pair_text(e.u + 1, e.v + 1) + ": loop");
    g.edges_.push_back(Edge::canonical(e.u, e.v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  g.adjacency_.assign(static_cast<std::size_t>(n), {});
  for (const Edge& e : g.edges_) {
    g.adjacency_[e.u].push_back(e.v);
    g.adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (a < 0 || a >= n_ || b < 0 || b >= n_) return false;
  const auto& nbrs = adjacency_[a];
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

int Graph::edge_index(Vertex a, Vertex b) const {
  if (a == b) return -1;
  const Edge key = Edge::canonical(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return static_cast<int>(it - edges_.begin());
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> s) {
  InducedSubgraph out;
  out.original.assign(s.begin(), s.end());
  for (Vertex v : out.original) {
    if (v < 0 || v >= g.n()) {
      throw InputError("vertex " + std::to_string(v + 1) + " out of range 1.." + std::to_string(g.n()));
    }
  }
  std::sort(out.original.begin(), out.original.end());
  out.original.erase(std::unique(out.original.begin(), out.original.end()), out.original.end());

  std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t k = 0; k < out.original.size(); ++k) local[out.original[k]] = static_cast<int>(k);

  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (local[e.u] >= 0 && local[e.v] >= 0) kept.push_back(Edge{local[e.u], local[e.v]});
  }
  out.graph = Graph::from_edges(static_cast<int>(out.original.size()), kept);
  return out;
}

SubgraphSolution::SubgraphSolution(const Graph& host, std::vector<Edge> chosen) : host_(&host) {
  for (Edge& e : chosen) {
    e = Edge::canonical(e.u, e.v);
    if (host.edge_index(e.u, e.v) < 0) {
      throw InputError("edge " + pair_text(e.u + 1, e.v + 1) + " is not an edge of the host graph");
    }
  }
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  chosen_ = std::move(chosen);
}

std::vector<int> degrees(const SubgraphSolution& sol) {
  std::vector<int> d(static_cast<std::size_t>(sol.host().n()), 0);
  for (const Edge& e : sol.edges()) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

}  // namespace degseq
