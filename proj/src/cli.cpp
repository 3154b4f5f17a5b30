#include "degseq/cli.hpp"

#include <CLI11.hpp>

#include <climits>
#include <optional>
#include <ostream>
#include <sstream>

#include "degseq/errors.hpp"
#include "degseq/formats.hpp"
#include "degseq/generators.hpp"
#include "degseq/nice_decomposition.hpp"
#include "degseq/oracle.hpp"
#include "degseq/pipeline.hpp"

namespace degseq {

namespace {

struct Args {
  std::string graph;
  std::string costs;
  std::string td;
  std::string out;
  std::string emit_solution;
  std::string costs_out;
  std::string kind = "path";
  std::string sizes;
  std::optional<int> max_width;
  int n = 10;
  int k = 2;
  int min_n = 2;
  int max_n = 9;
  double p = 0.5;
  std::uint64_t seed = 1;
  std::size_t count = 500;
  bool check_oracle = false;
  bool nice = false;
  bool time = false;
};

// Writes to --out when given, otherwise to the report stream.
void deliver(const Args& a, std::ostream& out, const std::string& text) {
  if (a.out.empty()) {
    out << text;
  } else {
    write_text_file(a.out, text);
  }
}

int cmd_solve(const Args& a, std::ostream& out, std::ostream& err) {
  const Graph g = parse_graph_file(read_text_file(a.graph));
  const CostModel model = parse_costs_file(read_text_file(a.costs), g.n());
  PipelineOptions options;
  if (!a.td.empty()) {
    ParsedTd parsed = parse_td_file(read_text_file(a.td));
    if (parsed.n != g.n()) {
      throw InputError("decomposition is over " + std::to_string(parsed.n) + " vertices, graph has " +
                       std::to_string(g.n()));
    }
    options.td = std::move(parsed.td);
  }
  if (a.max_width) options.max_width = *a.max_width;
  options.solve.retain_values = false;

  const RunReport report = run_pipeline(g, model, options);
  out << format_report(report, a.time);
  if (!a.emit_solution.empty()) {
    write_text_file(a.emit_solution, emit_solution_file(report.optimum.value(), report.solution));
  }
  if (a.check_oracle) {
    if (g.edge_count() > oracle::kMaxSolveEdges) {
      out << "oracle skipped " << g.edge_count() << " edges\n";
    } else {
      const auto expected = oracle::brute_force_solve(g, model).optimum;
      if (expected != report.optimum) {
        err << "oracle mismatch: solver " << report.optimum << ", oracle " << expected << '\n';
        return kExitInvariantBreach;
      }
      out << "oracle agrees\n";
    }
  }
  return kExitOk;
}

int cmd_decompose(const Args& a, std::ostream& out) {
  const Graph g = parse_graph_file(read_text_file(a.graph));
  const MinFillResult mf = min_fill_decompose(g);
  if (a.max_width && mf.td.width() > *a.max_width) {
    throw WidthExceeded("min-fill width " + std::to_string(mf.td.width()) + " exceeds --max-width " +
                        std::to_string(*a.max_width));
  }
  const TreeDecomposition td = a.nice ? to_nice(mf.td, g).as_tree_decomposition() : mf.td;
  deliver(a, out, emit_td_file(td, g.n()));
  return kExitOk;
}

int cmd_validate_td(const Args& a, std::ostream& out) {
  const Graph g = parse_graph_file(read_text_file(a.graph));
  const ParsedTd parsed = parse_td_file(read_text_file(a.td));
  if (parsed.n != g.n()) {
    throw InputError("decomposition is over " + std::to_string(parsed.n) + " vertices, graph has " +
                     std::to_string(g.n()));
  }
  auto violations = validate_td(g, parsed.td);
  const int limit = a.max_width.value_or(INT_MAX);
  if (violations.empty() && parsed.td.width() > limit) {
    out << "width " << parsed.td.width() << " exceeds " << limit << '\n';
    return kExitWidthExceeded;
  }
  if (violations.empty()) {
    const NiceDecomposition ntd = to_nice(parsed.td, g);
    violations = validate_nice(g, ntd, limit);
    if (violations.empty()) {
      out << "ok width " << parsed.td.width() << " bags " << parsed.td.bags.size() << " nice_nodes " << ntd.size()
          << '\n';
      return kExitOk;
    }
  }
  for (const Violation& v : violations) out << "violation " << v.to_string() << '\n';
  return kExitInputError;
}

int cmd_gen(const Args& a, std::ostream& out) {
  const GraphKind kind = parse_graph_kind(a.kind);
  const Graph g = generate(GenerateParams{kind, a.n, a.k, a.seed, a.p});
  deliver(a, out, emit_graph_file(g));
  if (!a.costs_out.empty()) {
    // Separate stream so the graph does not depend on whether costs are drawn.
    Rng rng(a.seed ^ 0x9e3779b97f4a7c15ULL);
    write_text_file(a.costs_out, emit_costs_file(random_costs(g.n(), -9, 9, rng)));
  }
  return kExitOk;
}

int cmd_oracle(const Args& a, std::ostream& out) {
  const Graph g = parse_graph_file(read_text_file(a.graph));
  const CostModel model = parse_costs_file(read_text_file(a.costs), g.n());
  const auto r = oracle::brute_force_solve(g, model);
  out << emit_solution_file(r.optimum.value(), r.witness);
  return kExitOk;
}

int cmd_crosscheck(const Args& a, std::ostream& out) {
  InstanceOptions options;
  options.min_n = a.min_n;
  options.max_n = a.max_n;
  options.p = a.p;
  if (options.min_n < 0 || options.min_n > options.max_n) throw InputError("need 0 <= --min-n <= --max-n");
  if (options.p < 0.0 || options.p > 1.0) throw InputError("--p must lie in [0, 1]");
  const CrosscheckSummary summary = crosscheck(a.count, a.seed, options);
  out << format_crosscheck(summary);
  return summary.ok() ? kExitOk : kExitInvariantBreach;
}

int cmd_bench(const Args& a, std::ostream& out) {
  std::vector<int> sizes;
  std::stringstream ss(a.sizes);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      sizes.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InputError("bad size '" + item + "' in --sizes");
    }
  }
  if (sizes.empty()) throw InputError("--sizes needs at least one value");
  out << format_bench_csv(bench(parse_graph_kind(a.kind), sizes, a.k, a.seed), a.time);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact degree sequence optimization over tree decompositions", "degseq"};
  app.require_subcommand(1);
  Args a;

  auto* solve = app.add_subcommand("solve", "Solve an instance end to end");
  solve->add_option("--graph", a.graph, "graph in .gr format")->required();
  solve->add_option("--costs", a.costs, "cost file")->required();
  solve->add_option("--td", a.td, "tree decomposition in .td format (default: min-fill)");
  solve->add_option("--max-width", a.max_width, "abort with exit code 2 above this width");
  solve->add_option("--emit-solution", a.emit_solution, "write the optimal subgraph here");
  solve->add_flag("--check-oracle", a.check_oracle, "compare with brute force when small enough");
  solve->add_option("--seed", a.seed, "unused; accepted for uniformity");
  solve->add_flag("--time", a.time, "append wall time to the report");

  auto* decompose = app.add_subcommand("decompose", "Emit a min-fill tree decomposition");
  decompose->add_option("--graph", a.graph)->required();
  decompose->add_flag("--nice", a.nice, "emit the nice form");
  decompose->add_option("--max-width", a.max_width);
  decompose->add_option("--out", a.out);

  auto* validate = app.add_subcommand("validate-td", "Check a tree decomposition against a graph");
  validate->add_option("--graph", a.graph)->required();
  validate->add_option("--td", a.td)->required();
  validate->add_option("--max-width", a.max_width);

  auto* gen = app.add_subcommand("gen", "Generate a graph");
  gen->add_option("--kind", a.kind, "path|cycle|ktree|sp|gnp");
  gen->add_option("--n", a.n);
  gen->add_option("--k", a.k);
  gen->add_option("--p", a.p);
  gen->add_option("--seed", a.seed);
  gen->add_option("--out", a.out);
  gen->add_option("--costs-out", a.costs_out, "also write random costs in [-9, 9]");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimum (small instances only)");
  oracle_cmd->add_option("--graph", a.graph)->required();
  oracle_cmd->add_option("--costs", a.costs)->required();

  auto* cross = app.add_subcommand("crosscheck", "Compare the solver with brute force on random instances");
  cross->add_option("--count", a.count);
  cross->add_option("--seed", a.seed);
  cross->add_option("--min-n", a.min_n);
  cross->add_option("--max-n", a.max_n);
  cross->add_option("--p", a.p);

  auto* bench_cmd = app.add_subcommand("bench", "Time the pipeline on generated graphs, CSV output");
  bench_cmd->add_option("--kind", a.kind);
  bench_cmd->add_option("--sizes", a.sizes, "comma-separated vertex counts")->required();
  bench_cmd->add_option("--k", a.k);
  bench_cmd->add_option("--seed", a.seed);
  bench_cmd->add_flag("--time", a.time, "add a wall_ms column");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    if (*solve) return cmd_solve(a, out, err);
    if (*decompose) return cmd_decompose(a, out);
    if (*validate) return cmd_validate_td(a, out);
    if (*gen) return cmd_gen(a, out);
    if (*oracle_cmd) return cmd_oracle(a, out);
    if (*cross) return cmd_crosscheck(a, out);
    if (*bench_cmd) return cmd_bench(a, out);
  } catch (const WidthExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitWidthExceeded;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariantBreach;
  }
  return kExitInputError;
}

}  // namespace degseq
