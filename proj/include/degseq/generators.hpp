#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "degseq/cost_model.hpp"
#include "degseq/graph.hpp"

namespace degseq {

// All randomness goes through one explicitly seeded engine.
using Rng = std::mt19937_64;

enum class GraphKind { Path, Cycle, KTree, SeriesParallel, Random };

// "path", "cycle", "ktree", "sp" (or "series-parallel"), "gnp". Throws InputError.
GraphKind parse_graph_kind(std::string_view name);
const char* to_string(GraphKind kind);

struct GenerateParams {
  GraphKind kind = GraphKind::Path;
  int n = 1;
  int k = 1;              // ktree only
  std::uint64_t seed = 1;  // ktree, sp and gnp
  double p = 0.5;         // gnp only
};

// path: 1-2-...-n. cycle: needs n >= 3. ktree: a (k+1)-clique grown by
// attaching each new vertex to a uniformly chosen existing k-clique, labels
// shuffled; needs k >= 1 and n > k. sp: two-terminal series-parallel graph
// grown from one edge by random subdivisions and parallel paths. gnp:
// Erdos-Renyi. Deterministic for fixed parameters. Throws InputError.
Graph generate(const GenerateParams& params);

Graph random_gnp(int n, double p, Rng& rng);
CostModel random_costs(int n, std::int64_t lo, std::int64_t hi, Rng& rng);
// A nonempty random subset of {0, ..., n-1} per vertex.
std::vector<std::vector<int>> random_degree_sets(int n, Rng& rng);

}  // namespace degseq
