#pragma once

#include <string>
#include <utility>
#include <vector>

#include "degseq/cost_model.hpp"
#include "degseq/graph.hpp"

namespace degseq::testing {

inline Graph one_based(int n, std::vector<std::pair<int, int>> edges) { return Graph::from_one_based(n, edges); }

inline Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return one_based(n, e);
}

inline Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(n, 1);
  return one_based(n, e);
}

inline Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) e.emplace_back(a, b);
  return one_based(n, e);
}

inline CostModel same_table(int n, std::vector<std::int64_t> table) {
  return CostModel(std::vector<std::vector<std::int64_t>>(static_cast<std::size_t>(n), std::move(table)));
}

// f_i(x) = -x for every vertex.
inline CostModel minus_x(int n) {
  std::vector<std::int64_t> t(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) t[x] = -x;
  return same_table(n, t);
}

}  // namespace degseq::testing
