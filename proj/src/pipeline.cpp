#include "degseq/pipeline.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include "degseq/errors.hpp"
#include "degseq/formats.hpp"
#include "degseq/nice_decomposition.hpp"
#include "degseq/oracle.hpp"

namespace degseq {

RunReport run_pipeline(const Graph& g, const CostModel& model, const PipelineOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (model.n() != g.n()) {
    throw InputError("cost model has " + std::to_string(model.n()) + " vertices, graph has " + std::to_string(g.n()));
  }

  TreeDecomposition td;
  if (options.td) {
    if (auto violations = validate_td(g, *options.td); !violations.empty()) {
      throw InputError("invalid tree decomposition: " + violations.front().to_string());
    }
    td = *options.td;
  } else {
    td = min_fill_decompose(g).td;
  }
  if (td.width() > options.max_width) {
    throw WidthExceeded("decomposition width " + std::to_string(td.width()) + " exceeds --max-width " +
                        std::to_string(options.max_width));
  }

  const NiceDecomposition ntd = to_nice(td, g);
  if (auto violations = validate_nice(g, ntd, options.max_width); !violations.empty()) {
    throw InvariantError("nice decomposition failed validation: " + violations.front().to_string());
  }
  const SolveResult result = solve(g, model, ntd, options.solve);
  const SubgraphSolution sol = reconstruct(result, ntd, g);
  if (evaluate(model, sol) != result.optimum) {
    throw InvariantError("reconstructed subgraph evaluates to " + evaluate(model, sol).to_string() +
                         ", solver reported " + result.optimum.to_string());
  }

  RunReport report;
  report.optimum = result.optimum;
  report.solution = sol.edges();
  report.degrees = degrees(sol);
  report.width = ntd.width();
  report.nice_nodes = ntd.size();
  report.states = state_count_report(result, ntd);
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string format_report(const RunReport& report, bool with_time) {
  std::ostringstream os;
  os << "value " << report.optimum << '\n';
  os << "width " << report.width << '\n';
  os << "nice_nodes " << report.nice_nodes << '\n';
  os << "states " << report.states.total_stored << '\n';
  os << "state_bound " << report.states.total_bound << '\n';
  os << "max_node_states " << report.states.max_stored << '\n';
  os << "degrees";
  for (int d : report.degrees) os << ' ' << d;
  os << '\n';
  for (const Edge& e : report.solution) os << "edge " << e.u + 1 << ' ' << e.v + 1 << '\n';
  if (with_time) os << "time_ms " << std::fixed << std::setprecision(3) << report.wall_ms << '\n';
  return os.str();
}

ExtendedCost dp_optimum(const Graph& g, const CostModel& model) {
  const NiceDecomposition ntd = to_nice(min_fill_decompose(g).td, g);
  return solve(g, model, ntd).optimum;
}

Instance random_instance(Rng& rng, const InstanceOptions& options) {
  std::uniform_int_distribution<int> size(options.min_n, options.max_n);
  while (true) {
    const int n = size(rng);
    Graph g = random_gnp(n, options.p, rng);
    CostModel model = random_costs(n, options.lo, options.hi, rng);
    if (g.edge_count() <= options.max_edges) return Instance{std::move(g), std::move(model)};
  }
}

CrosscheckSummary crosscheck(std::size_t count, std::uint64_t seed, const InstanceOptions& options,
                             const OptimumFn& solver) {
  CrosscheckSummary summary;
  summary.count = count;
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    Instance inst = random_instance(rng, options);
    const ExtendedCost got = solver(inst.graph, inst.model);
    const ExtendedCost want = oracle::brute_force_solve(inst.graph, inst.model).optimum;
    if (got == want) {
      ++summary.matched;
    } else if (!summary.first_mismatch) {
      summary.first_mismatch = Mismatch{i, std::move(inst.graph), std::move(inst.model), got, want};
    }
  }
  return summary;
}

std::string format_crosscheck(const CrosscheckSummary& summary) {
  std::ostringstream os;
  os << summary.matched << '/' << summary.count << " match\n";
  if (const auto& m = summary.first_mismatch) {
    os << "first mismatch: instance " << m->index << ", solver " << m->solver_value << ", oracle " << m->oracle_value
       << '\n';
    os << "graph:\n" << emit_graph_file(m->graph) << "costs:\n" << emit_costs_file(m->model);
  }
  return os.str();
}

std::vector<BenchRow> bench(GraphKind kind, const std::vector<int>& sizes, int k, std::uint64_t seed) {
  std::vector<BenchRow> rows;
  for (int n : sizes) {
    const Graph g = generate(GenerateParams{kind, n, k, seed, 0.5});
    Rng rng(seed);
    const CostModel model = random_costs(n, -9, 9, rng);
    PipelineOptions options;
    options.solve.retain_values = false;
    const RunReport report = run_pipeline(g, model, options);
    BenchRow row;
    row.kind = kind;
    row.n = n;
    row.k = k;
    row.width = report.width;
    row.nice_nodes = report.nice_nodes;
    row.states = report.states.total_stored;
    row.state_bound = report.states.total_bound;
    row.max_node_states = report.states.max_stored;
    row.optimum = report.optimum.value();
    row.wall_ms = report.wall_ms;
    rows.push_back(row);
  }
  return rows;
}

std::string format_bench_csv(const std::vector<BenchRow>& rows, bool with_time) {
  std::ostringstream os;
  os << "kind,n,k,width,nice_nodes,states,state_bound,max_node_states,optimum";
  if (with_time) os << ",wall_ms";
  os << '\n';
  for (const BenchRow& r : rows) {
    os << to_string(r.kind) << ',' << r.n << ',' << r.k << ',' << r.width << ',' << r.nice_nodes << ',' << r.states
       << ',' << r.state_bound << ',' << r.max_node_states << ',' << r.optimum;
    if (with_time) os << ',' << std::fixed << std::setprecision(3) << r.wall_ms;
    os << '\n';
  }
  return os.str();
}

}  // namespace degseq
