#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "degseq/cost_model.hpp"
#include "degseq/graph.hpp"
#include "degseq/nice_decomposition.hpp"

namespace degseq {

// A DP state at a bag: a degree for every bag vertex (in bag order) and a
// subset of the H-edges induced by the bag, as a bitmask over BagLayout::edges().
struct BagState {
  std::vector<int> degrees;
  std::uint64_t edge_mask = 0;

  friend bool operator==(const BagState&, const BagState&) = default;
};

// Per-bag indexing data shared by a node's table and its handlers.
//
// States are packed into one 64-bit key: a mixed-radix degree index with the
// first bag vertex most significant, shifted left by edge_count(), OR'ed with
// the edge mask. Numeric key order is therefore lexicographic order on the
// degree vector, then numeric order on the mask.
class BagLayout {
 public:
  BagLayout() = default;
  // `caps` is indexed by host vertex. Throws InputError if the packed key
  // would not fit in 63 bits.
  BagLayout(std::vector<Vertex> bag, const Graph& g, std::span<const int> caps);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<int>& caps() const { return caps_; }
  // H-edges with both ends in the bag, as (position, position) with a < b,
  // in lexicographic order.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  Edge host_edge(int k) const { return Edge{vertices_[edges_[k].first], vertices_[edges_[k].second]}; }

  int position(Vertex v) const;
  // Index into edges() of the edge between positions a and b, or -1.
  int edge_position(int a, int b) const;

  std::uint64_t stride(int pos) const { return strides_[pos]; }
  // Product of (cap + 1) over the bag.
  std::uint64_t degree_space() const { return degree_space_; }
  // degree_space() * 2^edge_count(): the number of representable states.
  std::uint64_t state_space() const { return degree_space_ << edges_.size(); }

  std::uint64_t encode(std::span<const int> degrees, std::uint64_t mask) const;
  std::uint64_t encode(const BagState& s) const { return encode(s.degrees, s.edge_mask); }
  BagState decode(std::uint64_t key) const;
  void decode_degrees(std::uint64_t key, std::span<int> out) const;
  std::uint64_t mask_of(std::uint64_t key) const { return key & mask_bits_; }
  std::uint64_t degree_index_of(std::uint64_t key) const { return key >> edges_.size(); }
  // True when every degree is within its cap and the mask only uses bag edges.
  bool admits(const BagState& s) const;

  friend bool operator==(const BagLayout& a, const BagLayout& b) {
    return a.vertices_ == b.vertices_ && a.caps_ == b.caps_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<int> caps_;
  std::vector<std::uint64_t> strides_;
  std::vector<std::pair<int, int>> edges_;
  std::uint64_t degree_space_ = 1;
  std::uint64_t mask_bits_ = 0;
};

// How a stored state was obtained. Child references are indices into the
// child table's entries.
struct LeafBase {
  friend bool operator==(const LeafBase&, const LeafBase&) = default;
};
struct IntroduceFrom {
  std::uint32_t child = 0;
  std::uint64_t added_edges = 0;  // mask over the parent layout's edges
  friend bool operator==(const IntroduceFrom&, const IntroduceFrom&) = default;
};
struct ForgetFrom {
  std::uint32_t child = 0;
  friend bool operator==(const ForgetFrom&, const ForgetFrom&) = default;
};
struct JoinFrom {
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  friend bool operator==(const JoinFrom&, const JoinFrom&) = default;
};
using Choice = std::variant<LeafBase, IntroduceFrom, ForgetFrom, JoinFrom>;

// Finite entries of g(v, c, F) for one node, sorted by key. Absent states are
// +infinity. Stored as parallel arrays; release_values() drops keys and values
// and keeps what reconstruction needs.
class StateTable {
 public:
  StateTable() = default;
  explicit StateTable(BagLayout layout) : layout_(std::move(layout)) {}
  StateTable(BagLayout layout, std::vector<std::uint64_t> keys, std::vector<std::int64_t> values,
             std::vector<Choice> choices);

  const BagLayout& layout() const { return layout_; }
  std::size_t size() const { return choices_.size(); }
  bool has_values() const { return keys_.size() == choices_.size(); }

  std::span<const std::uint64_t> keys() const { return keys_; }
  std::span<const std::int64_t> values() const { return values_; }
  std::span<const Choice> choices() const { return choices_; }
  BagState state(std::size_t i) const { return layout_.decode(keys_[i]); }

  std::optional<std::size_t> find(std::uint64_t key) const;
  ExtendedCost lookup(const BagState& s) const;

  // Sets the entry for `s`, replacing any existing one. Intended for building
  // small tables by hand.
  void insert(const BagState& s, std::int64_t value, Choice choice = LeafBase{});

  void release_values();

 private:
  BagLayout layout_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::int64_t> values_;
  std::vector<Choice> choices_;
};

enum class CapPolicy {
  HostDegree,    // c(i) <= min(n - 1, deg_H(i))
  FullRange,  // c(i) <= n - 1
};

// Instance data the handlers read: the host graph, the cost tables and the
// per-vertex degree caps. Holds references; the graph and model must outlive it.
class DpContext {
 public:
  DpContext(const Graph& g, const CostModel& model, CapPolicy policy = CapPolicy::HostDegree);
  DpContext(const Graph&, CostModel&&, CapPolicy = CapPolicy::HostDegree) = delete;
  DpContext(Graph&&, const CostModel&, CapPolicy = CapPolicy::HostDegree) = delete;

  const Graph& graph() const { return *graph_; }
  const CostModel& model() const { return *model_; }
  const std::vector<int>& caps() const { return caps_; }
  BagLayout layout(std::vector<Vertex> bag) const { return BagLayout(std::move(bag), *graph_, caps_); }

 private:
  const Graph* graph_;
  const CostModel* model_;
  std::vector<int> caps_;
};

enum class TableMethod {
  // Work on the B slice when the child tables have product form (see below),
  // scan every child state otherwise.
  Auto,
  // Always scan every child state.
  Direct,
};

// Node handlers. `bag` is the node's own (sorted) bag. Child tables must have
// the layouts implied by the node type, otherwise InvariantError. Among equal
// minima the canonically first candidate wins: child key order for forget,
// smallest left key then smallest right key for join.
//
// Every table the solver builds from a real instance has product form:
// g(c, F) = sum_bag f(c) + B(c - deg F) for every bag edge set F, because the
// cost of the forgotten vertices only sees how many edges each bag vertex
// sends below the bag. With TableMethod::Auto the handlers detect that and
// compute B for the parent from B for the children (for a join, a min-plus
// convolution), then expand over F. Values and choices are the same as with
// TableMethod::Direct.
StateTable handle_leaf(const DpContext& ctx, std::span<const Vertex> bag);
StateTable handle_introduce(const DpContext& ctx, std::span<const Vertex> bag, Vertex introduced,
                            const StateTable& child, TableMethod method = TableMethod::Auto);
StateTable handle_forget(const DpContext& ctx, std::span<const Vertex> bag, Vertex forgotten,
                         const StateTable& child, TableMethod method = TableMethod::Auto);
StateTable handle_join(const DpContext& ctx, std::span<const Vertex> bag, const StateTable& left,
                       const StateTable& right, TableMethod method = TableMethod::Auto);

struct SolveOptions {
  CapPolicy caps = CapPolicy::HostDegree;
  TableMethod method = TableMethod::Auto;
  // When false, a child's keys and values are dropped once its parent is done;
  // choices stay so reconstruct() still works.
  bool retain_values = true;
};

struct SolveResult {
  ExtendedCost optimum;
  std::vector<StateTable> tables;  // indexed by node id
};

// Runs the handlers over ntd in post order and returns the root value, which
// is the minimum of sum f_i(d_i(G)) over all G subset of H. Throws InputError
// if the model does not match the graph or ntd fails validate_nice.
SolveResult solve(const Graph& g, const CostModel& model, const NiceDecomposition& ntd,
                  const SolveOptions& options = {});

// Follows choices down from the root state and collects the edges added at
// introduce nodes. Throws InvariantError on a dangling choice.
SubgraphSolution reconstruct(const SolveResult& result, const NiceDecomposition& ntd, const Graph& g);

struct NodeStateCount {
  int node = 0;
  NodeKind kind = NodeKind::Leaf;
  std::size_t bag_size = 0;
  std::size_t stored = 0;
  std::uint64_t bound = 0;  // prod (cap_i + 1) * 2^|E(H[bag])|
};

struct StateCountReport {
  std::vector<NodeStateCount> nodes;  // post order
  std::uint64_t total_stored = 0;
  std::uint64_t total_bound = 0;  // saturates at UINT64_MAX
  std::size_t max_stored = 0;
};

StateCountReport state_count_report(const SolveResult& result, const NiceDecomposition& ntd);

}  // namespace degseq
