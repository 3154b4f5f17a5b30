#include "degseq/generators.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "degseq/errors.hpp"

namespace degseq {

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "path") return GraphKind::Path;
  if (name == "cycle") return GraphKind::Cycle;
  if (name == "ktree") return GraphKind::KTree;
  if (name == "sp" || name == "series-parallel") return GraphKind::SeriesParallel;
  if (name == "gnp") return GraphKind::Random;
  throw InputError("unknown graph kind '" + std::string(name) + "'");
}

const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::Path:
      return "path";
    case GraphKind::Cycle:
      return "cycle";
    case GraphKind::KTree:
      return "ktree";
    case GraphKind::SeriesParallel:
      return "sp";
    case GraphKind::Random:
      return "gnp";
  }
  return "?";
}

namespace {

Graph ktree(int n, int k, Rng& rng) {
  if (k < 1) throw InputError("ktree needs k >= 1");
  if (n <= k) throw InputError("ktree needs n > k, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  std::vector<Edge> edges;
  for (int a = 0; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b) edges.push_back({a, b});
  std::vector<std::vector<Vertex>> cliques;
  for (int skip = 0; skip <= k; ++skip) {
    std::vector<Vertex> c;
    for (int a = 0; a <= k; ++a)
      if (a != skip) c.push_back(a);
    cliques.push_back(std::move(c));
  }
  for (Vertex v = k + 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, cliques.size() - 1);
    const std::vector<Vertex> base = cliques[pick(rng)];
    for (Vertex x : base) edges.push_back({x, v});
    for (std::size_t skip = 0; skip < base.size(); ++skip) {
      std::vector<Vertex> c;
      for (std::size_t a = 0; a < base.size(); ++a)
        if (a != skip) c.push_back(base[a]);
      c.push_back(v);
      cliques.push_back(std::move(c));
    }
  }
  std::vector<Vertex> label(static_cast<std::size_t>(n));
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin(), label.end(), rng);
  for (Edge& e : edges) e = Edge::canonical(label[e.u], label[e.v]);
  return Graph::from_edges(n, edges);
}

Graph series_parallel(int n, Rng& rng) {
  if (n == 1) return Graph::from_edges(1, {});
  std::vector<Edge> edges{{0, 1}};
  for (Vertex w = 2; w < n; ++w) {
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    const std::size_t at = pick(rng);
    const Edge e = edges[at];
    if (std::bernoulli_distribution(0.5)(rng)) {
      // series: subdivide e
      edges[at] = edges.back();
      edges.pop_back();
    }
    edges.push_back({e.u, w});
    edges.push_back({e.v, w});
  }
  return Graph::from_edges(n, edges);
}

}  // namespace

Graph generate(const GenerateParams& params) {
  const int n = params.n;
  if (n < 1) throw InputError("generator needs n >= 1");
  Rng rng(params.seed);
  switch (params.kind) {
    case GraphKind::Path: {
      std::vector<Edge> edges;
      for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
      return Graph::from_edges(n, edges);
    }
    case GraphKind::Cycle: {
      if (n < 3) throw InputError("cycle needs n >= 3");
      std::vector<Edge> edges;
      for (Vertex v = 0; v < n; ++v) edges.push_back(Edge::canonical(v, (v + 1) % n));
      return Graph::from_edges(n, edges);
    }
    case GraphKind::KTree:
      return ktree(n, params.k, rng);
    case GraphKind::SeriesParallel:
      return series_parallel(n, rng);
    case GraphKind::Random:
      if (params.p < 0.0 || params.p > 1.0) throw InputError("edge probability must lie in [0, 1]");
      return random_gnp(n, params.p, rng);
  }
  throw InputError("unknown graph kind");
}

Graph random_gnp(int n, double p, Rng& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (coin(rng)) edges.push_back({a, b});
  return Graph::from_edges(n, edges);
}

CostModel random_costs(int n, std::int64_t lo, std::int64_t hi, Rng& rng) {
  if (lo > hi) throw InputError("empty cost range");
  std::uniform_int_distribution<std::int64_t> entry(lo, hi);
  std::vector<std::vector<std::int64_t>> tables(static_cast<std::size_t>(n));
  for (auto& t : tables) {
    t.resize(static_cast<std::size_t>(n));
    for (auto& x : t) x = entry(rng);
  }
  return CostModel(std::move(tables));
}

std::vector<std::vector<int>> random_degree_sets(int n, Rng& rng) {
  std::vector<std::vector<int>> sets(static_cast<std::size_t>(n));
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> any(0, std::max(0, n - 1));
  for (auto& s : sets) {
    for (int x = 0; x < n; ++x)
      if (coin(rng)) s.push_back(x);
    if (s.empty()) s.push_back(any(rng));
  }
  return sets;
}

}  // namespace degseq
