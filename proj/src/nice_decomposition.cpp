#include "degseq/nice_decomposition.hpp"

#include <algorithm>
#include <string>

#include "degseq/errors.hpp"

namespace degseq {

namespace {

std::string node_name(int id) { return "node " + std::to_string(id); }

std::vector<Vertex> set_minus(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class NiceBuilder {
 public:
  int add(NodeKind kind, Vertex vertex, std::vector<Vertex> bag, std::vector<int> children) {
    nodes_.push_back(NiceNode{kind, vertex, std::move(bag), std::move(children)});
    return static_cast<int>(nodes_.size()) - 1;
  }

  // Leaf followed by introductions of `bag` in ascending order.
  int leaf_chain(const std::vector<Vertex>& bag) {
    int top = add(NodeKind::Leaf, -1, {}, {});
    std::vector<Vertex> current;
    for (Vertex v : bag) {
      current.push_back(v);
      top = add(NodeKind::Introduce, v, current, {top});
    }
    return top;
  }

  // From a node with bag `from` up to bag `to`: forget first, then introduce.
  int transition(int top, std::vector<Vertex> from, const std::vector<Vertex>& to) {
    for (Vertex v : set_minus(from, to)) {
      from.erase(std::lower_bound(from.begin(), from.end(), v));
      top = add(NodeKind::Forget, v, from, {top});
    }
    for (Vertex v : set_minus(to, from)) {
      from.insert(std::lower_bound(from.begin(), from.end(), v), v);
      top = add(NodeKind::Introduce, v, from, {top});
    }
    return top;
  }

  std::vector<NiceNode> take() { return std::move(nodes_); }

 private:
  std::vector<NiceNode> nodes_;
};

}  // namespace

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Leaf:
      return "leaf";
    case NodeKind::Introduce:
      return "introduce";
    case NodeKind::Forget:
      return "forget";
    case NodeKind::Join:
      return "join";
  }
  return "?";
}

NiceDecomposition::NiceDecomposition(int n, std::vector<NiceNode> nodes, int root)
    : n_(n), root_(root), nodes_(std::move(nodes)) {
  const auto count = static_cast<int>(nodes_.size());
  if (root_ < 0 || root_ >= count) throw InputError("root id " + std::to_string(root_) + " out of range");
  for (int id = 0; id < count; ++id) {
    for (int c : nodes_[id].children) {
      if (c < 0 || c >= count) throw InputError(node_name(id) + " has out-of-range child " + std::to_string(c));
    }
  }

  parent_.assign(nodes_.size(), -1);
  cones_.assign(nodes_.size(), VertexSet(static_cast<std::size_t>(n_)));
  // Iterative DFS; a node reached twice is not expanded again.
  std::vector<char> state(nodes_.size(), 0);  // 0 new, 1 open, 2 done
  std::vector<std::pair<int, std::size_t>> stack{{root_, 0}};
  state[root_] = 1;
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    if (next < nodes_[id].children.size()) {
      const int c = nodes_[id].children[next++];
      if (state[c] == 0) {
        state[c] = 1;
        parent_[c] = id;
        stack.emplace_back(c, 0);
      }
      continue;
    }
    const int done = id;
    stack.pop_back();
    state[done] = 2;
    post_order_.push_back(done);
    VertexSet& cone = cones_[done];
    for (Vertex v : nodes_[done].bag)
      if (v >= 0 && v < n_) cone.set(static_cast<std::size_t>(v));
    for (int c : nodes_[done].children)
      if (parent_[c] == done) cone |= cones_[c];
  }
}

int NiceDecomposition::width() const {
  int w = -1;
  for (const auto& nd : nodes_) w = std::max(w, static_cast<int>(nd.bag.size()) - 1);
  return w;
}

std::size_t NiceDecomposition::count(NodeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [kind](const NiceNode& nd) { return nd.kind == kind; }));
}

TreeDecomposition NiceDecomposition::as_tree_decomposition() const {
  TreeDecomposition td;
  td.bags.reserve(nodes_.size());
  for (const auto& nd : nodes_) td.bags.push_back(nd.bag);
  for (int id = 0; id < static_cast<int>(nodes_.size()); ++id)
    for (int c : nodes_[id].children) td.tree_edges.emplace_back(std::min(id, c), std::max(id, c));
  std::sort(td.tree_edges.begin(), td.tree_edges.end());
  return td;
}

NiceDecomposition to_nice(const TreeDecomposition& td, const Graph& g) {
  if (auto violations = validate_td(g, td); !violations.empty()) {
    throw InputError("invalid tree decomposition: " + violations.front().to_string());
  }
  NiceBuilder builder;
  if (td.bags.empty()) {
    int root = builder.add(NodeKind::Leaf, -1, {}, {});
    return NiceDecomposition(g.n(), builder.take(), root);
  }

  const auto nb = static_cast<int>(td.bags.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nb));
  for (auto [a, b] : td.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  // Post order of the decomposition tree rooted at bag 0.
  std::vector<int> parent(static_cast<std::size_t>(nb), -1);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(nb));
  {
    std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
    parent[0] = 0;
    while (!stack.empty()) {
      auto& [t, next] = stack.back();
      if (next < adj[t].size()) {
        int s = adj[t][next++];
        if (parent[s] == -1) {
          parent[s] = t;
          stack.emplace_back(s, 0);
        }
        continue;
      }
      order.push_back(t);
      stack.pop_back();
    }
  }

  // top[t]: nice node whose bag equals td.bags[t].
  std::vector<int> top(static_cast<std::size_t>(nb), -1);
  for (int t : order) {
    std::vector<int> branches;
    for (int s : adj[t]) {
      if (s == parent[t] && t != 0) continue;
      if (parent[s] != t) continue;
      branches.push_back(builder.transition(top[s], td.bags[s], td.bags[t]));
    }
    if (branches.empty()) {
      top[t] = builder.leaf_chain(td.bags[t]);
      continue;
    }
    int acc = branches.front();
    for (std::size_t k = 1; k < branches.size(); ++k) {
      acc = builder.add(NodeKind::Join, -1, td.bags[t], {acc, branches[k]});
    }
    top[t] = acc;
  }
  int root = builder.transition(top[0], td.bags[0], {});
  return NiceDecomposition(g.n(), builder.take(), root);
}

std::vector<Violation> validate_nice(const Graph& g, const NiceDecomposition& ntd, int max_width) {
  std::vector<Violation> out;
  const int n = g.n();
  const auto count = static_cast<int>(ntd.size());
  if (ntd.n() != n) {
    out.push_back({"vertex count", "decomposition is over " + std::to_string(ntd.n()) + " vertices, graph has " +
                                       std::to_string(n)});
    return out;
  }

  // Tree shape: every node reachable exactly once from the root.
  std::vector<int> indegree(static_cast<std::size_t>(count), 0);
  for (const auto& nd : ntd.nodes())
    for (int c : nd.children) ++indegree[c];
  for (int id = 0; id < count; ++id) {
    if (id == ntd.root() && indegree[id] != 0) out.push_back({"root has parent", node_name(id)});
    if (id != ntd.root() && indegree[id] != 1) {
      out.push_back({"not a tree", node_name(id) + " has " + std::to_string(indegree[id]) + " parents"});
    }
  }
  if (static_cast<int>(ntd.post_order().size()) != count) {
    out.push_back({"not a tree", std::to_string(count - static_cast<int>(ntd.post_order().size())) +
                                     " nodes unreachable from the root"});
  }
  if (!out.empty()) return out;

  for (int id = 0; id < count; ++id) {
    const NiceNode& nd = ntd.node(id);
    const auto& bag = nd.bag;
    if (!std::is_sorted(bag.begin(), bag.end()) || std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
      out.push_back({"malformed bag", node_name(id)});
      continue;
    }
    if (!bag.empty() && (bag.front() < 0 || bag.back() >= n)) {
      out.push_back({"vertex out of range", node_name(id)});
      continue;
    }
    if (static_cast<int>(bag.size()) - 1 > max_width) {
      out.push_back({"width exceeded", node_name(id) + " has bag of size " + std::to_string(bag.size()) +
                                           ", limit is " + std::to_string(max_width + 1)});
    }
    const std::size_t want_children = nd.kind == NodeKind::Leaf ? 0 : (nd.kind == NodeKind::Join ? 2 : 1);
    if (nd.children.size() != want_children) {
      out.push_back({"child count", node_name(id) + " (" + to_string(nd.kind) + ") has " +
                                        std::to_string(nd.children.size()) + " children"});
      continue;
    }
    switch (nd.kind) {
      case NodeKind::Leaf:
        if (!bag.empty()) out.push_back({"nonempty leaf bag", node_name(id)});
        break;
      case NodeKind::Introduce: {
        const auto& child = ntd.node(nd.children[0]).bag;
        std::vector<Vertex> expect = child;
        expect.insert(std::lower_bound(expect.begin(), expect.end(), nd.vertex), nd.vertex);
        if (std::binary_search(child.begin(), child.end(), nd.vertex) || expect != bag) {
          out.push_back({"introduce mismatch", node_name(id) + ": child bag plus vertex " +
                                                   std::to_string(nd.vertex + 1) + " is not the node bag"});
        }
        break;
      }
      case NodeKind::Forget: {
        const auto& child = ntd.node(nd.children[0]).bag;
        std::vector<Vertex> expect = bag;
        expect.insert(std::lower_bound(expect.begin(), expect.end(), nd.vertex), nd.vertex);
        if (std::binary_search(bag.begin(), bag.end(), nd.vertex) || expect != child) {
          out.push_back({"forget mismatch", node_name(id) + ": node bag plus vertex " +
                                                std::to_string(nd.vertex + 1) + " is not the child bag"});
        }
        break;
      }
      case NodeKind::Join: {
        const int u = nd.children[0];
        const int w = nd.children[1];
        if (ntd.node(u).bag != bag || ntd.node(w).bag != bag) {
          out.push_back({"join mismatch", node_name(id) + ": children bags differ from the node bag"});
          break;
        }
        VertexSet in_bag(static_cast<std::size_t>(n));
        for (Vertex v : bag) in_bag.set(static_cast<std::size_t>(v));
        VertexSet overlap = (ntd.cone(u) - in_bag) & (ntd.cone(w) - in_bag);
        if (overlap.any()) {
          out.push_back({"join cone overlap", node_name(id) + ": vertex " +
                                                  std::to_string(overlap.find_first() + 1) +
                                                  " lies below both children but not in the bag"});
        }
        break;
      }
    }
  }
  if (!ntd.node(ntd.root()).bag.empty()) out.push_back({"nonempty root bag", node_name(ntd.root())});
  if (!out.empty()) return out;

  // Coverage and connectivity on the underlying unrooted tree.
  for (auto& v : validate_td(g, ntd.as_tree_decomposition())) out.push_back(std::move(v));
  return out;
}

}  // namespace degseq
