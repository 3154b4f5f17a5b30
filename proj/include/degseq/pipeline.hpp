#pragma once

#include <climits>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "degseq/cost_model.hpp"
#include "degseq/dp_solver.hpp"
#include "degseq/generators.hpp"
#include "degseq/graph.hpp"
#include "degseq/tree_decomposition.hpp"

namespace degseq {

struct PipelineOptions {
  // Supplied decomposition; min-fill is used when absent.
  std::optional<TreeDecomposition> td;
  int max_width = INT_MAX;
  SolveOptions solve;
};

struct RunReport {
  ExtendedCost optimum;
  std::vector<Edge> solution;
  std::vector<int> degrees;
  int width = -1;
  std::size_t nice_nodes = 0;
  StateCountReport states;
  double wall_ms = 0.0;
};

// decompose -> to_nice -> validate_nice -> solve -> reconstruct, then checks
// that the reconstructed subgraph evaluates to the optimum. Throws
// WidthExceeded when the decomposition is wider than max_width, InputError for
// a bad supplied decomposition, InvariantError if a self-check fails.
RunReport run_pipeline(const Graph& g, const CostModel& model, const PipelineOptions& options = {});

// Deterministic text report; the wall time line only when with_time is set.
std::string format_report(const RunReport& report, bool with_time);

// Optimum via min-fill -> to_nice -> solve.
ExtendedCost dp_optimum(const Graph& g, const CostModel& model);

struct InstanceOptions {
  int min_n = 2;
  int max_n = 9;
  double p = 0.5;
  std::int64_t lo = -9;
  std::int64_t hi = 9;
  std::size_t max_edges = 25;  // resample above this (oracle guard)
};

struct Instance {
  Graph graph;
  CostModel model;
};

// n uniform in [min_n, max_n], G(n, p), table entries uniform in [lo, hi].
Instance random_instance(Rng& rng, const InstanceOptions& options);

struct Mismatch {
  std::size_t index = 0;
  Graph graph;
  CostModel model;
  ExtendedCost solver_value;
  ExtendedCost oracle_value;
};

struct CrosscheckSummary {
  std::size_t count = 0;
  std::size_t matched = 0;
  std::optional<Mismatch> first_mismatch;  // lowest instance index

  bool ok() const { return matched == count; }
};

using OptimumFn = std::function<ExtendedCost(const Graph&, const CostModel&)>;

// Runs `solver` against the brute-force oracle on `count` instances drawn in
// order from one engine seeded with `seed`.
CrosscheckSummary crosscheck(std::size_t count, std::uint64_t seed, const InstanceOptions& options = {},
                             const OptimumFn& solver = dp_optimum);

// "<matched>/<count> match", followed by a reproducer for the first mismatch.
std::string format_crosscheck(const CrosscheckSummary& summary);

struct BenchRow {
  GraphKind kind = GraphKind::Path;
  int n = 0;
  int k = 0;
  int width = -1;
  std::size_t nice_nodes = 0;
  std::uint64_t states = 0;
  std::uint64_t state_bound = 0;
  std::size_t max_node_states = 0;
  std::int64_t optimum = 0;
  double wall_ms = 0.0;
};

// One solve per size on generated graphs with random costs in [-9, 9].
std::vector<BenchRow> bench(GraphKind kind, const std::vector<int>& sizes, int k, std::uint64_t seed);
std::string format_bench_csv(const std::vector<BenchRow>& rows, bool with_time);

}  // namespace degseq
