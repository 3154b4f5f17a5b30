#pragma once

#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "degseq/graph.hpp"
#include "degseq/tree_decomposition.hpp"

namespace degseq {

enum class NodeKind { Leaf, Introduce, Forget, Join };

const char* to_string(NodeKind kind);

struct NiceNode {
  NodeKind kind = NodeKind::Leaf;
  Vertex vertex = -1;         // introduced or forgotten vertex
  std::vector<Vertex> bag;    // sorted
  std::vector<int> children;  // none, one, or two node ids
};

using VertexSet = boost::dynamic_bitset<>;

// Rooted tree of typed nodes. The constructor does not check the nice-form
// invariants (validate_nice does); it only records parents, a post order of
// the nodes reachable from the root, and the cone set of every reachable node
// (union of the bags in its subtree).
class NiceDecomposition {
 public:
  NiceDecomposition() = default;
  // Throws InputError if the root or a child id is out of range.
  NiceDecomposition(int n, std::vector<NiceNode> nodes, int root);

  int n() const { return n_; }
  int root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<NiceNode>& nodes() const { return nodes_; }
  const NiceNode& node(int id) const { return nodes_[id]; }
  // -1 for the root and for unreachable nodes.
  int parent(int id) const { return parent_[id]; }

  // Children before parents, root last. Contains only reachable nodes.
  const std::vector<int>& post_order() const { return post_order_; }
  // I(T_v). Empty for unreachable nodes.
  const VertexSet& cone(int id) const { return cones_[id]; }

  int width() const;
  std::size_t count(NodeKind kind) const;

  // Same bags and tree, forgetting node types (for .td output).
  TreeDecomposition as_tree_decomposition() const;

 private:
  int n_ = 0;
  int root_ = -1;
  std::vector<NiceNode> nodes_;
  std::vector<int> parent_;
  std::vector<int> post_order_;
  std::vector<VertexSet> cones_;
};

// Converts a valid tree decomposition into nice form rooted at bag 0. Each
// child bag is connected to its parent bag by forgetting the vertices that
// leave (ascending) and then introducing the vertices that enter (ascending);
// leaves introduce their bag in ascending order; a bag with m >= 2 children
// gets m - 1 left-deep join nodes; the root forgets its bag down to empty.
// Width is preserved. Throws InputError if validate_td reports violations.
NiceDecomposition to_nice(const TreeDecomposition& td, const Graph& g);

// Checks every nice-form invariant against g: tree shape, node-type bag
// relations, empty root and leaf bags, width <= max_width, coverage of
// vertices and edges, connectivity, and disjointness of the two child cones
// outside the bag at every join node.
std::vector<Violation> validate_nice(const Graph& g, const NiceDecomposition& ntd, int max_width);

}  // namespace degseq
