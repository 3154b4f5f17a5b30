#include "degseq/tree_decomposition.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <set>

namespace degseq {

namespace {

std::string one_based(Vertex v) { return std::to_string(v + 1); }

// Adjacency lists of the decomposition tree, or nullopt-like empty result with
// violations filled in when the edges do not form a tree.
std::vector<std::vector<int>> tree_adjacency(const TreeDecomposition& td, std::vector<Violation>& out) {
  const auto nb = static_cast<int>(td.bags.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nb));
  bool ok = true;
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || a >= nb || b < 0 || b >= nb || a == b) {
      out.push_back({"bad tree edge", "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")"});
      ok = false;
      continue;
    }
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  if (!ok) return {};
  if (nb == 0) return adj;
  if (static_cast<int>(td.tree_edges.size()) != nb - 1) {
    out.push_back({"not a tree", std::to_string(td.tree_edges.size()) + " tree edges for " + std::to_string(nb) +
                                     " bags"});
    return {};
  }
  std::vector<char> seen(static_cast<std::size_t>(nb), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (int s : adj[t]) {
      if (!seen[s]) {
        seen[s] = 1;
        ++reached;
        stack.push_back(s);
      }
    }
  }
  if (reached != nb) {
    out.push_back({"not a tree", "tree edges are disconnected (" + std::to_string(reached) + " of " +
                                     std::to_string(nb) + " bags reachable from bag 1)"});
    return {};
  }
  return adj;
}

// Witness for a vertex whose bags do not form a subtree: two bags holding v
// and a bag on the path between them that lacks it.
std::string connectivity_witness(const TreeDecomposition& td, const std::vector<std::vector<int>>& adj, Vertex v) {
  auto holds = [&](int t) { return std::binary_search(td.bags[t].begin(), td.bags[t].end(), v); };
  const auto nb = static_cast<int>(td.bags.size());
  int first = -1;
  for (int t = 0; t < nb && first < 0; ++t)
    if (holds(t)) first = t;
  // BFS over the whole tree from `first`, recording parents.
  std::vector<int> parent(static_cast<std::size_t>(nb), -2);
  std::queue<int> q;
  q.push(first);
  parent[first] = -1;
  std::vector<char> within(static_cast<std::size_t>(nb), 0);
  within[first] = 1;
  while (!q.empty()) {
    int t = q.front();
    q.pop();
    for (int s : adj[t]) {
      if (parent[s] != -2) continue;
      parent[s] = t;
      within[s] = within[t] && holds(s);
      q.push(s);
    }
  }
  for (int t = 0; t < nb; ++t) {
    if (holds(t) && !within[t]) {
      int gap = parent[t];
      while (gap >= 0 && holds(gap)) gap = parent[gap];
      return "vertex " + one_based(v) + " in bags " + std::to_string(first + 1) + " and " + std::to_string(t + 1) +
             " but not in bag " + std::to_string(gap + 1) + " between them";
    }
  }
  return "vertex " + one_based(v);
}

}  // namespace

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

WidthReport width_report(const TreeDecomposition& td) {
  WidthReport r;
  r.width = td.width();
  r.node_count = td.bags.size();
  for (const auto& b : td.bags) ++r.bag_size_histogram[b.size()];
  return r;
}

std::vector<Violation> validate_td(const Graph& g, const TreeDecomposition& td) {
  std::vector<Violation> out;
  const int n = g.n();

  bool bags_ok = true;
  for (std::size_t t = 0; t < td.bags.size(); ++t) {
    const auto& bag = td.bags[t];
    if (!std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
      out.push_back({"malformed bag", "bag " + std::to_string(t + 1) + " is not sorted and duplicate-free"});
      bags_ok = false;
    }
    for (Vertex v : bag) {
      if (v < 0 || v >= n) {
        out.push_back({"vertex out of range", "bag " + std::to_string(t + 1) + " holds vertex " + one_based(v)});
        bags_ok = false;
      }
    }
  }
  if (!bags_ok) return out;
  if (n > 0 && td.bags.empty()) {
    out.push_back({"no bags", "graph has " + std::to_string(n) + " vertices"});
    return out;
  }

  auto adj = tree_adjacency(td, out);
  const bool tree_ok = out.empty();

  // (a) vertex coverage
  std::vector<int> bag_count(static_cast<std::size_t>(n), 0);
  for (const auto& bag : td.bags)
    for (Vertex v : bag) ++bag_count[v];
  for (Vertex v = 0; v < n; ++v)
    if (bag_count[v] == 0) out.push_back({"uncovered vertex", "vertex " + one_based(v)});

  // (b) edge coverage
  std::vector<char> covered(g.edge_count(), 0);
  for (const auto& bag : td.bags) {
    for (std::size_t a = 0; a < bag.size(); ++a) {
      for (std::size_t b = a + 1; b < bag.size(); ++b) {
        int e = g.edge_index(bag[a], bag[b]);
        if (e >= 0) covered[e] = 1;
      }
    }
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!covered[e]) {
      const Edge& ed = g.edges()[e];
      out.push_back({"uncovered edge", "edge {" + one_based(ed.u) + "," + one_based(ed.v) + "}"});
    }
  }

  // (c) connectivity: in a tree, the bags holding v form a subtree iff the
  // tree edges between such bags number exactly one fewer than the bags.
  if (tree_ok) {
    std::vector<int> edge_count(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> common;
    for (auto [a, b] : td.tree_edges) {
      common.clear();
      std::set_intersection(td.bags[a].begin(), td.bags[a].end(), td.bags[b].begin(), td.bags[b].end(),
                            std::back_inserter(common));
      for (Vertex v : common) ++edge_count[v];
    }
    for (Vertex v = 0; v < n; ++v) {
      if (bag_count[v] > 0 && edge_count[v] != bag_count[v] - 1) {
        out.push_back({"connectivity", connectivity_witness(td, adj, v)});
      }
    }
  }
  return out;
}

MinFillResult min_fill_decompose(const Graph& g) {
  const int n = g.n();
  std::vector<std::set<Vertex>> nbrs(static_cast<std::size_t>(n));
  for (const Edge& e : g.edges()) {
    nbrs[e.u].insert(e.v);
    nbrs[e.v].insert(e.u);
  }

  auto fill_of = [&](Vertex v) {
    std::int64_t missing = 0;
    for (auto a = nbrs[v].begin(); a != nbrs[v].end(); ++a) {
      for (auto b = std::next(a); b != nbrs[v].end(); ++b) {
        if (!nbrs[*a].count(*b)) ++missing;
      }
    }
    return missing;
  };

  std::vector<std::int64_t> fill(static_cast<std::size_t>(n));
  std::set<std::pair<std::int64_t, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) {
    fill[v] = fill_of(v);
    queue.emplace(fill[v], v);
  }

  MinFillResult result;
  std::vector<int> position(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Vertex>> later_nbrs(static_cast<std::size_t>(n));
  while (!queue.empty()) {
    const Vertex v = queue.begin()->second;
    queue.erase(queue.begin());
    position[v] = static_cast<int>(result.elimination_order.size());
    result.elimination_order.push_back(v);

    std::vector<Vertex> hood(nbrs[v].begin(), nbrs[v].end());
    later_nbrs[v] = hood;
    for (std::size_t a = 0; a < hood.size(); ++a) {
      nbrs[hood[a]].erase(v);
      for (std::size_t b = a + 1; b < hood.size(); ++b) {
        nbrs[hood[a]].insert(hood[b]);
        nbrs[hood[b]].insert(hood[a]);
      }
    }
    nbrs[v].clear();

    std::set<Vertex> affected(hood.begin(), hood.end());
    for (Vertex w : hood) affected.insert(nbrs[w].begin(), nbrs[w].end());
    for (Vertex w : affected) {
      queue.erase({fill[w], w});
      fill[w] = fill_of(w);
      queue.emplace(fill[w], w);
    }
  }

  // Elimination forest: bag t hangs below the bag of its earliest-eliminated
  // later neighbor. One tree per component; their roots are chained.
  std::vector<std::vector<Vertex>> bags(static_cast<std::size_t>(n));
  std::vector<int> up(static_cast<std::size_t>(n), -1);
  std::vector<int> roots;
  for (int t = 0; t < n; ++t) {
    const Vertex v = result.elimination_order[t];
    bags[t] = later_nbrs[v];
    bags[t].push_back(v);
    std::sort(bags[t].begin(), bags[t].end());
    if (later_nbrs[v].empty()) {
      roots.push_back(t);
      continue;
    }
    int next = n;
    for (Vertex w : later_nbrs[v]) next = std::min(next, position[w]);
    up[t] = next;
  }
  for (std::size_t r = 0; r + 1 < roots.size(); ++r) up[roots[r]] = roots[r + 1];

  // Contract tree edges whose one bag contains the other; the merged node
  // keeps the larger bag. This keeps every axiom and the width. Parents come
  // later in elimination order, so the walk goes from the roots down.
  std::vector<int> alias(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) alias[t] = t;
  auto resolve = [&](int t) {
    while (alias[t] != t) t = alias[t] = alias[alias[t]];
    return t;
  };
  auto subset = [](const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (int t = n - 1; t >= 0; --t) {
    if (up[t] < 0) continue;
    const int parent = resolve(up[t]);
    if (subset(bags[t], bags[parent])) {
      alias[t] = parent;
    } else if (subset(bags[parent], bags[t])) {
      bags[parent] = bags[t];  // parent takes the larger bag, keeps its place
      alias[t] = parent;
    }
  }

  // Surviving bags, root of the elimination forest first.
  TreeDecomposition& td = result.td;
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  for (int t = n - 1; t >= 0; --t) {
    if (resolve(t) != t) continue;
    index[t] = static_cast<int>(td.bags.size());
    td.bags.push_back(bags[t]);
  }
  for (int t = n - 1; t >= 0; --t) {
    if (resolve(t) != t || up[t] < 0) continue;
    td.tree_edges.emplace_back(index[resolve(up[t])], index[t]);
  }
  std::sort(td.tree_edges.begin(), td.tree_edges.end());

  result.report = width_report(td);
  return result;
}

}  // namespace degseq
