#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "degseq/cost_model.hpp"
#include "degseq/graph.hpp"
#include "degseq/tree_decomposition.hpp"

// Text formats. All ids in files are 1-based; all errors are InputError with
// the offending line number.
//
//   .gr     PACE graph:   "c ..." comments, "p tw <n> <m>", then m lines "u v".
//   .td     PACE decomposition: "s td <bags> <width+1> <n>", "b <id> <v...>"
//           for every bag, then tree edges "a b".
//   costs   one line per vertex (or "default"): "<v|default> <family> <args>"
//           with families  table a_0 ... a_{n-1}  |  set b,b,...  |
//           interval l u  |  target b  |  cubic-main  |  cubic-other.
//   solution  "value <int>" then "edge u v" lines in canonical order.
namespace degseq {

Graph parse_graph_file(std::string_view text);
std::string emit_graph_file(const Graph& g);

CostModel parse_costs_file(std::string_view text, int n);
// Always emits explicit per-vertex tables.
std::string emit_costs_file(const CostModel& model);

struct ParsedTd {
  int n = 0;  // vertex count declared on the solution line
  TreeDecomposition td;
};

// Checks the header, bag ids, vertex range, the declared width and that the
// tree edges form a tree. Coverage against a graph is validate_td's job.
ParsedTd parse_td_file(std::string_view text);
// Bags in id order with ascending vertices, then tree edges as sorted (a < b)
// pairs.
std::string emit_td_file(const TreeDecomposition& td, int n);

struct SolutionFile {
  std::int64_t value = 0;
  std::vector<Edge> edges;
};

std::string emit_solution_file(std::int64_t value, const std::vector<Edge>& edges);
SolutionFile parse_solution_file(std::string_view text);

// Whole-file helpers; throw InputError naming the path when unreadable.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace degseq
