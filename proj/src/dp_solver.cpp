#include "degseq/dp_solver.hpp"

#include <algorithm>
#include <climits>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "degseq/errors.hpp"

namespace degseq {

// ---------------------------------------------------------------------------
// BagLayout

BagLayout::BagLayout(std::vector<Vertex> bag, const Graph& g, std::span<const int> caps)
    : vertices_(std::move(bag)) {
  const auto k = static_cast<int>(vertices_.size());
  caps_.resize(vertices_.size());
  for (int a = 0; a < k; ++a) caps_[a] = caps[vertices_[a]];
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (g.has_edge(vertices_[a], vertices_[b])) edges_.emplace_back(a, b);

  strides_.assign(vertices_.size(), 1);
  degree_space_ = 1;
  for (int a = k - 1; a >= 0; --a) {
    strides_[a] = degree_space_;
    if (__builtin_mul_overflow(degree_space_, static_cast<std::uint64_t>(caps_[a]) + 1, &degree_space_)) {
      degree_space_ = std::numeric_limits<std::uint64_t>::max();
      break;
    }
  }
  const std::size_t m = edges_.size();
  if (m > 62 || degree_space_ > (std::uint64_t{1} << (63 - m))) {
    throw InputError("bag of " + std::to_string(k) + " vertices with " + std::to_string(m) +
                     " induced edges has too many states to index in 63 bits");
  }
  mask_bits_ = (std::uint64_t{1} << m) - 1;
}

int BagLayout::position(Vertex v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return -1;
  return static_cast<int>(it - vertices_.begin());
}

int BagLayout::edge_position(int a, int b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b});
  if (it == edges_.end() || *it != std::pair{a, b}) return -1;
  return static_cast<int>(it - edges_.begin());
}

std::uint64_t BagLayout::encode(std::span<const int> degrees, std::uint64_t mask) const {
  std::uint64_t index = 0;
  for (std::size_t a = 0; a < degrees.size(); ++a) index += static_cast<std::uint64_t>(degrees[a]) * strides_[a];
  return (index << edges_.size()) | mask;
}

void BagLayout::decode_degrees(std::uint64_t key, std::span<int> out) const {
  std::uint64_t index = key >> edges_.size();
  for (std::size_t a = 0; a < vertices_.size(); ++a) {
    out[a] = static_cast<int>(index / strides_[a]);
    index %= strides_[a];
  }
}

BagState BagLayout::decode(std::uint64_t key) const {
  BagState s;
  s.degrees.resize(vertices_.size());
  decode_degrees(key, s.degrees);
  s.edge_mask = mask_of(key);
  return s;
}

bool BagLayout::admits(const BagState& s) const {
  if (s.degrees.size() != vertices_.size() || (s.edge_mask & ~mask_bits_) != 0) return false;
  for (std::size_t a = 0; a < vertices_.size(); ++a)
    if (s.degrees[a] < 0 || s.degrees[a] > caps_[a]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// StateTable

StateTable::StateTable(BagLayout layout, std::vector<std::uint64_t> keys, std::vector<std::int64_t> values,
                       std::vector<Choice> choices)
    : layout_(std::move(layout)), keys_(std::move(keys)), values_(std::move(values)), choices_(std::move(choices)) {
  if (keys_.size() != values_.size() || keys_.size() != choices_.size()) {
    throw InvariantError("state table arrays differ in length");
  }
}

std::optional<std::size_t> StateTable::find(std::uint64_t key) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - keys_.begin());
}

ExtendedCost StateTable::lookup(const BagState& s) const {
  if (!has_values()) throw InvariantError("state table values were released");
  if (!layout_.admits(s)) return ExtendedCost::infinity();
  auto i = find(layout_.encode(s));
  return i ? ExtendedCost(values_[*i]) : ExtendedCost::infinity();
}

void StateTable::insert(const BagState& s, std::int64_t value, Choice choice) {
  if (!layout_.admits(s)) throw InputError("state does not fit the bag layout");
  const std::uint64_t key = layout_.encode(s);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  const auto at = it - keys_.begin();
  if (it != keys_.end() && *it == key) {
    values_[at] = value;
    choices_[at] = choice;
    return;
  }
  keys_.insert(it, key);
  values_.insert(values_.begin() + at, value);
  choices_.insert(choices_.begin() + at, choice);
}

void StateTable::release_values() {
  keys_ = {};
  values_ = {};
}

// ---------------------------------------------------------------------------
// Handlers

namespace {

// Collects candidate states and keeps, per key, the first candidate with the
// smallest value. Callers offer candidates in canonical order, so ties resolve
// to the canonically first choice.
class TableBuilder {
 public:
  explicit TableBuilder(const BagLayout& layout) {
    constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 20;
    if (layout.state_space() <= kDenseLimit) dense_.assign(layout.state_space(), kEmpty);
  }

  void offer(std::uint64_t key, std::int64_t value, const Choice& choice) {
    std::uint32_t* slot = nullptr;
    if (!dense_.empty()) {
      slot = &dense_[key];
    } else {
      slot = &sparse_.try_emplace(key, kEmpty).first->second;
    }
    if (*slot == kEmpty) {
      *slot = static_cast<std::uint32_t>(entries_.size());
      entries_.push_back(Entry{key, value, choice});
    } else if (value < entries_[*slot].value) {
      entries_[*slot].value = value;
      entries_[*slot].choice = choice;
    }
  }

  // For handlers that produce every key at most once.
  void append(std::uint64_t key, std::int64_t value, const Choice& choice) {
    entries_.push_back(Entry{key, value, choice});
  }

  StateTable finish(BagLayout layout) {
    if (entries_.size() >= std::numeric_limits<std::uint32_t>::max()) {
      throw InputError("state table exceeds 2^32 entries");
    }
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
    std::vector<std::uint64_t> keys(entries_.size());
    std::vector<std::int64_t> values(entries_.size());
    std::vector<Choice> choices(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      keys[i] = entries_[i].key;
      values[i] = entries_[i].value;
      choices[i] = entries_[i].choice;
    }
    return StateTable(std::move(layout), std::move(keys), std::move(values), std::move(choices));
  }

 private:
  struct Entry {
    std::uint64_t key;
    std::int64_t value;
    Choice choice;
  };
  static constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

  std::vector<Entry> entries_;
  std::vector<std::uint32_t> dense_;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse_;
};

void require_values(const StateTable& t) {
  if (!t.has_values()) throw InvariantError("child table values were released before use");
}

std::string bag_text(std::span<const Vertex> bag) {
  std::string s = "{";
  for (std::size_t a = 0; a < bag.size(); ++a) s += (a ? "," : "") + std::to_string(bag[a] + 1);
  return s + "}";
}

std::int64_t bag_cost(const CostModel& model, const BagLayout& layout, std::span<const int> degrees) {
  std::int64_t total = 0;
  for (std::size_t a = 0; a < layout.size(); ++a) total += model(layout.vertices()[a], degrees[a]);
  return total;
}

// Remaps bit k of a child mask to bit map[k] of a parent mask; map[k] < 0
// drops the bit.
std::uint64_t remap_mask(std::uint64_t mask, const std::vector<int>& map) {
  std::uint64_t out = 0;
  while (mask) {
    const int k = __builtin_ctzll(mask);
    mask &= mask - 1;
    if (map[k] >= 0) out |= std::uint64_t{1} << map[k];
  }
  return out;
}

}  // namespace

DpContext::DpContext(const Graph& g, const CostModel& model, CapPolicy policy) : graph_(&g), model_(&model) {
  if (model.n() != g.n()) {
    throw InputError("cost model has " + std::to_string(model.n()) + " vertices, graph has " + std::to_string(g.n()));
  }
  caps_.resize(static_cast<std::size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) {
    caps_[v] = policy == CapPolicy::FullRange ? g.n() - 1 : std::min(g.n() - 1, g.degree(v));
  }
}

StateTable handle_leaf(const DpContext& ctx, std::span<const Vertex> bag) {
  if (!bag.empty()) throw InvariantError("leaf node with nonempty bag " + bag_text(bag));
  BagLayout layout = ctx.layout({});
  StateTable table(layout);
  table.insert(BagState{}, 0, LeafBase{});
  return table;
}

namespace {

// Degrees contributed by the edge set `mask` within the bag.
void mask_degrees(const BagLayout& layout, std::uint64_t mask, std::span<int> out) {
  std::fill(out.begin(), out.end(), 0);
  for (; mask; mask &= mask - 1) {
    auto [a, b] = layout.edges()[__builtin_ctzll(mask)];
    ++out[a];
    ++out[b];
  }
}

// ---------------------------------------------------------------------------
// Product form
//
// For a real instance g(v, c, F) = sum_bag f(c) + B(c - deg F): the cost of
// the forgotten vertices only depends on how many edges each bag vertex sends
// below the bag, x = c - deg F. A table has product form when that holds and
// every (x, F) with x + deg F within the caps is present. Handlers then work
// on B alone and expand the result, which is much cheaper than scanning
// every state and gives the same values and choices.

struct ProductForm {
  std::size_t width = 0;
  std::vector<std::uint64_t> index;     // degree index of each x, ascending
  std::vector<std::int64_t> below;      // B(x)
  std::vector<int> degrees;             // x, `width` per entry
  std::vector<std::uint32_t> position;  // entry of (x_r + deg F, F) at [F * size() + r]

  std::size_t size() const { return index.size(); }
  const int* x(std::size_t r) const { return degrees.data() + r * width; }
  std::uint32_t entry(std::uint64_t mask, std::size_t r) const { return position[mask * size() + r]; }
};

constexpr std::uint32_t kNoEntry = std::numeric_limits<std::uint32_t>::max();
constexpr int kMaxProductEdges = 24;

// Degrees and degree index contributed by each bag edge set.
struct MaskDegrees {
  std::size_t width = 0;
  std::vector<int> degrees;           // `width` per mask
  std::vector<std::uint64_t> index;

  explicit MaskDegrees(const BagLayout& layout) : width(layout.size()) {
    const std::uint64_t masks = std::uint64_t{1} << layout.edge_count();
    degrees.assign(masks * width, 0);
    index.assign(masks, 0);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
      std::span<int> d(degrees.data() + mask * width, width);
      mask_degrees(layout, mask, d);
      for (std::size_t a = 0; a < width; ++a) index[mask] += static_cast<std::uint64_t>(d[a]) * layout.stride(static_cast<int>(a));
    }
  }
  const int* of(std::uint64_t mask) const { return degrees.data() + mask * width; }
};

std::optional<ProductForm> product_form(const StateTable& t, const CostModel& f) {
  const BagLayout& layout = t.layout();
  const auto k = layout.size();
  const int m = layout.edge_count();
  if (m > kMaxProductEdges || t.size() % (std::size_t{1} << m) != 0) return std::nullopt;

  ProductForm pf;
  pf.width = k;
  std::vector<int> deg(k);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (layout.mask_of(t.keys()[i]) != 0) continue;
    layout.decode_degrees(t.keys()[i], deg);
    pf.index.push_back(layout.degree_index_of(t.keys()[i]));
    pf.below.push_back(t.values()[i] - bag_cost(f, layout, deg));
    pf.degrees.insert(pf.degrees.end(), deg.begin(), deg.end());
  }
  const std::size_t rows = pf.size();
  if ((rows << m) != t.size()) return std::nullopt;

  // Each entry maps to a distinct (F, x) cell and the counts agree, so a full
  // pass with no misses covers every cell.
  const MaskDegrees md(layout);
  pf.position.assign(t.size(), kNoEntry);
  std::uint64_t last_index = std::numeric_limits<std::uint64_t>::max();
  std::int64_t own_cost = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::uint64_t key = t.keys()[i];
    const std::uint64_t mask = layout.mask_of(key);
    const std::uint64_t c_index = layout.degree_index_of(key);
    if (c_index != last_index) {
      layout.decode_degrees(key, deg);
      own_cost = bag_cost(f, layout, deg);
      last_index = c_index;
    }
    const int* fdeg = md.of(mask);
    for (std::size_t a = 0; a < k; ++a)
      if (deg[a] < fdeg[a]) return std::nullopt;
    const std::uint64_t x_index = c_index - md.index[mask];
    auto it = std::lower_bound(pf.index.begin(), pf.index.end(), x_index);
    if (it == pf.index.end() || *it != x_index) return std::nullopt;
    const auto r = static_cast<std::size_t>(it - pf.index.begin());
    if (t.values()[i] - own_cost != pf.below[r]) return std::nullopt;
    std::uint32_t& cell = pf.position[mask * rows + r];
    if (cell != kNoEntry) return std::nullopt;
    cell = static_cast<std::uint32_t>(i);
  }
  return pf;
}

// Candidate x for a parent slice. Lower (below, rank, extra) wins; on a full
// tie the earlier offer stays.
struct SliceCandidate {
  std::uint64_t index = 0;
  std::int64_t below = 0;
  std::uint32_t source = 0;
  std::uint32_t partner = 0;
  int rank = 0;
  std::uint64_t extra = 0;

  bool beats(const SliceCandidate& o) const {
    if (below != o.below) return below < o.below;
    if (rank != o.rank) return rank < o.rank;
    return extra < o.extra;
  }
};

class SliceAccumulator {
 public:
  explicit SliceAccumulator(const BagLayout& layout) {
    if (layout.degree_space() <= (std::uint64_t{1} << 22)) dense_.assign(layout.degree_space(), kNoEntry);
  }

  void offer(const SliceCandidate& c) {
    std::uint32_t* slot = nullptr;
    if (!dense_.empty()) {
      slot = &dense_[c.index];
    } else {
      slot = &sparse_.try_emplace(c.index, kNoEntry).first->second;
    }
    if (*slot == kNoEntry) {
      *slot = static_cast<std::uint32_t>(items_.size());
      items_.push_back(c);
    } else if (c.beats(items_[*slot])) {
      items_[*slot] = c;
    }
  }

  // Candidates sorted by degree index.
  std::vector<SliceCandidate> finish() {
    std::sort(items_.begin(), items_.end(),
              [](const SliceCandidate& a, const SliceCandidate& b) { return a.index < b.index; });
    return std::move(items_);
  }

 private:
  std::vector<SliceCandidate> items_;
  std::vector<std::uint32_t> dense_;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse_;
};

// Materializes every state (x + deg F, F) for the given slice, dropping
// degrees above the caps. choice_of(row, F) names the state's origin.
//
// States are generated with F in the outer loop, so a stable counting sort on
// the degree index alone leaves them in key order.
template <class ChoiceOf>
StateTable expand(BagLayout layout, const CostModel& f, const std::vector<SliceCandidate>& rows,
                  ChoiceOf&& choice_of) {
  const auto k = layout.size();
  const int m = layout.edge_count();
  const std::uint64_t masks = std::uint64_t{1} << m;
  const std::vector<int>& caps = layout.caps();
  const MaskDegrees md(layout);

  std::vector<int> xs(rows.size() * k);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    layout.decode_degrees(rows[r].index << m, std::span<int>(xs.data() + r * k, k));
  }
  auto fits = [&](std::size_t r, std::uint64_t mask) {
    const int* x = xs.data() + r * k;
    const int* d = md.of(mask);
    for (std::size_t a = 0; a < k; ++a)
      if (x[a] + d[a] > caps[a]) return false;
    return true;
  };

  std::size_t total = 0;
  std::uint64_t lo = std::numeric_limits<std::uint64_t>::max(), hi = 0;
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!fits(r, mask)) continue;
      ++total;
      lo = std::min(lo, rows[r].index + md.index[mask]);
      hi = std::max(hi, rows[r].index + md.index[mask]);
    }
  }
  if (total >= std::numeric_limits<std::uint32_t>::max()) throw InputError("state table exceeds 2^32 entries");

  std::vector<std::uint64_t> keys(total);
  std::vector<std::int64_t> values(total);
  std::vector<Choice> choices(total);
  std::vector<int> c(k);
  auto emit = [&](std::size_t at, std::size_t r, std::uint64_t mask) {
    const int* x = xs.data() + r * k;
    const int* d = md.of(mask);
    for (std::size_t a = 0; a < k; ++a) c[a] = x[a] + d[a];
    keys[at] = ((rows[r].index + md.index[mask]) << m) | mask;
    values[at] = rows[r].below + bag_cost(f, layout, c);
    choices[at] = choice_of(r, mask);
  };

  if (total > 0 && hi - lo < 4 * total + 1024) {
    std::vector<std::uint32_t> next(hi - lo + 2, 0);
    for (std::uint64_t mask = 0; mask < masks; ++mask)
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (fits(r, mask)) ++next[rows[r].index + md.index[mask] - lo + 1];
    for (std::size_t i = 1; i < next.size(); ++i) next[i] += next[i - 1];
    for (std::uint64_t mask = 0; mask < masks; ++mask)
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (fits(r, mask)) emit(next[rows[r].index + md.index[mask] - lo]++, r, mask);
  } else {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> order;
    order.reserve(total);
    for (std::uint64_t mask = 0; mask < masks; ++mask)
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (fits(r, mask)) order.emplace_back(((rows[r].index + md.index[mask]) << m) | mask, static_cast<std::uint32_t>(r));
    std::sort(order.begin(), order.end());
    for (std::size_t i = 0; i < order.size(); ++i) emit(i, order[i].second, layout.mask_of(order[i].first));
  }
  return StateTable(std::move(layout), std::move(keys), std::move(values), std::move(choices));
}

// Checks that `child` sits one vertex below `parent`, returning the position
// of that vertex in the larger of the two bags.
int extra_position(const BagLayout& larger, const BagLayout& smaller, Vertex v) {
  const int p = larger.position(v);
  if (p < 0 || smaller.position(v) >= 0) return -1;
  std::vector<Vertex> rest(larger.vertices());
  rest.erase(rest.begin() + p);
  return rest == smaller.vertices() ? p : -1;
}

// Edge index in `larger` for each edge of `smaller`, where `smaller` is
// `larger` without position p.
std::vector<int> embed_edges(const BagLayout& larger, const BagLayout& smaller, int p) {
  auto up = [p](int q) { return q < p ? q : q + 1; };
  std::vector<int> map(static_cast<std::size_t>(smaller.edge_count()));
  for (int e = 0; e < smaller.edge_count(); ++e) {
    map[e] = larger.edge_position(up(smaller.edges()[e].first), up(smaller.edges()[e].second));
  }
  return map;
}

// Bit mask of the edges of `layout` at position p.
std::uint64_t incident_mask(const BagLayout& layout, int p) {
  std::uint64_t mask = 0;
  for (int e = 0; e < layout.edge_count(); ++e) {
    if (layout.edges()[e].first == p || layout.edges()[e].second == p) mask |= std::uint64_t{1} << e;
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Direct handlers: scan every child state.

StateTable introduce_direct(const DpContext& ctx, BagLayout layout, int p, const StateTable& child) {
  const BagLayout& below = child.layout();
  const auto k = static_cast<int>(layout.size());
  auto up = [p](int q) { return q < p ? q : q + 1; };
  const std::vector<int> edge_map = embed_edges(layout, below, p);
  // Bag edges at the introduced vertex: (edge index, other endpoint position).
  std::vector<std::pair<int, int>> incident;
  for (int e = 0; e < layout.edge_count(); ++e) {
    auto [a, b] = layout.edges()[e];
    if (a == p) incident.emplace_back(e, b);
    if (b == p) incident.emplace_back(e, a);
  }
  const std::uint32_t subsets = std::uint32_t{1} << incident.size();
  const CostModel& f = ctx.model();
  const std::vector<int>& caps = layout.caps();

  TableBuilder builder(layout);
  std::vector<int> child_deg(below.size());
  std::vector<int> deg(static_cast<std::size_t>(k));
  for (std::size_t idx = 0; idx < child.size(); ++idx) {
    const std::uint64_t child_key = child.keys()[idx];
    below.decode_degrees(child_key, child_deg);
    const std::uint64_t base_mask = remap_mask(below.mask_of(child_key), edge_map);
    // g(u) minus the child bag's own f terms; what remains is the cost of the
    // vertices already forgotten below.
    const std::int64_t below_cost = child.values()[idx] - bag_cost(f, below, child_deg);

    for (std::uint32_t s = 0; s < subsets; ++s) {
      for (int q = 0; q < static_cast<int>(below.size()); ++q) deg[up(q)] = child_deg[q];
      deg[p] = 0;
      std::uint64_t added = 0;
      bool fits = true;
      for (std::size_t t = 0; t < incident.size(); ++t) {
        if (!(s >> t & 1U)) continue;
        auto [e, other] = incident[t];
        added |= std::uint64_t{1} << e;
        ++deg[p];
        if (++deg[other] > caps[other]) fits = false;
      }
      if (!fits || deg[p] > caps[p]) continue;
      const std::int64_t value = below_cost + bag_cost(f, layout, deg);
      builder.append(layout.encode(deg, base_mask | added), value,
                     IntroduceFrom{static_cast<std::uint32_t>(idx), added});
    }
  }
  return builder.finish(std::move(layout));
}

StateTable forget_direct(BagLayout layout, int p, const StateTable& child) {
  const BagLayout& below = child.layout();
  auto down = [p](int q) { return q < p ? q : q - 1; };
  std::vector<int> edge_map(static_cast<std::size_t>(below.edge_count()));
  for (int e = 0; e < below.edge_count(); ++e) {
    auto [a, b] = below.edges()[e];
    edge_map[e] = (a == p || b == p) ? -1 : layout.edge_position(down(a), down(b));
  }

  TableBuilder builder(layout);
  std::vector<int> child_deg(below.size());
  std::vector<int> deg(layout.size());
  for (std::size_t idx = 0; idx < child.size(); ++idx) {
    const std::uint64_t child_key = child.keys()[idx];
    below.decode_degrees(child_key, child_deg);
    for (int q = 0, r = 0; q < static_cast<int>(below.size()); ++q)
      if (q != p) deg[r++] = child_deg[q];
    const std::uint64_t mask = remap_mask(below.mask_of(child_key), edge_map);
    builder.offer(layout.encode(deg, mask), child.values()[idx], ForgetFrom{static_cast<std::uint32_t>(idx)});
  }
  return builder.finish(std::move(layout));
}

StateTable join_direct(const DpContext& ctx, BagLayout layout, const StateTable& left, const StateTable& right) {
  const auto k = layout.size();
  const CostModel& f = ctx.model();
  const std::vector<int>& caps = layout.caps();

  // Decoded degrees and "cost below the bag" for each child entry.
  auto unpack = [&](const StateTable& t, std::vector<int>& deg, std::vector<std::int64_t>& below) {
    deg.resize(t.size() * k);
    below.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::span<int> d(deg.data() + i * k, k);
      layout.decode_degrees(t.keys()[i], d);
      below[i] = t.values()[i] - bag_cost(f, layout, d);
    }
  };
  std::vector<int> ldeg, rdeg;
  std::vector<std::int64_t> lbelow, rbelow;
  unpack(left, ldeg, lbelow);
  unpack(right, rdeg, rbelow);

  const auto m = static_cast<unsigned>(layout.edge_count());
  TableBuilder builder(layout);
  std::vector<int> deg(k);
  for (std::size_t l = 0; l < left.size(); ++l) {
    const std::uint64_t lkey = left.keys()[l];
    const std::uint64_t lmask = layout.mask_of(lkey);
    const int* ld = ldeg.data() + l * k;
    // Right entries are sorted with the first bag vertex most significant, so
    // those whose first degree keeps the sum within its cap form a prefix.
    std::size_t r_end = right.size();
    if (k > 0) {
      const std::uint64_t limit = static_cast<std::uint64_t>(caps[0] - ld[0] + 1) * layout.stride(0);
      r_end = static_cast<std::size_t>(
          std::lower_bound(right.keys().begin(), right.keys().end(), limit << m) - right.keys().begin());
    }
    for (std::size_t r = 0; r < r_end; ++r) {
      const std::uint64_t rkey = right.keys()[r];
      const std::uint64_t rmask = layout.mask_of(rkey);
      if (lmask & rmask) continue;
      const int* rd = rdeg.data() + r * k;
      bool fits = true;
      for (std::size_t a = 0; a < k; ++a) {
        deg[a] = ld[a] + rd[a];
        if (deg[a] > caps[a]) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      const std::int64_t value = lbelow[l] + rbelow[r] + bag_cost(f, layout, deg);
      // Coordinates stay within their caps, so mixed-radix indices add.
      const std::uint64_t key =
          ((layout.degree_index_of(lkey) + layout.degree_index_of(rkey)) << m) | lmask | rmask;
      builder.offer(key, value, JoinFrom{static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(r)});
    }
  }
  return builder.finish(std::move(layout));
}

// ---------------------------------------------------------------------------
// Factored handlers. Children must have product form.

// The introduced vertex has nothing below it, so x gains a zero coordinate
// and B is unchanged. State (c, F) comes from child state
// (c - deg F_v, F minus the edges at v), where F_v are the edges at v.
StateTable introduce_factored(const DpContext& ctx, BagLayout layout, int p, const StateTable& child,
                              const ProductForm& pf) {
  const BagLayout& below = child.layout();
  const int m = layout.edge_count();
  std::vector<int> to_child(static_cast<std::size_t>(m), -1);
  {
    const std::vector<int> embed = embed_edges(layout, below, p);
    for (int e = 0; e < below.edge_count(); ++e) to_child[embed[e]] = e;
  }
  const std::uint64_t at_p = incident_mask(layout, p);

  std::vector<SliceCandidate> rows(pf.size());
  std::vector<int> x(layout.size());
  for (std::size_t r = 0; r < pf.size(); ++r) {
    const int* xu = pf.x(r);
    for (int q = 0, a = 0; q < static_cast<int>(layout.size()); ++q) x[q] = q == p ? 0 : xu[a++];
    std::uint64_t index = 0;
    for (std::size_t a = 0; a < x.size(); ++a) index += static_cast<std::uint64_t>(x[a]) * layout.stride(static_cast<int>(a));
    rows[r] = SliceCandidate{index, pf.below[r], static_cast<std::uint32_t>(r), 0, 0, 0};
  }
  return expand(std::move(layout), ctx.model(), rows, [&](std::size_t r, std::uint64_t mask) -> Choice {
    const std::uint64_t child_mask = remap_mask(mask & ~at_p, to_child);
    return IntroduceFrom{pf.entry(child_mask, r), mask & at_p};
  });
}

// B_v(x) = min over the degree c_w of the forgotten vertex w and the set S of
// bag edges at w of B_u(x - s, c_w - |S|) + f_w(c_w). Ties go to the smallest
// c_w, then the smallest S, which is the child key order.
StateTable forget_factored(const DpContext& ctx, BagLayout layout, Vertex forgotten, int p, const StateTable& child,
                           const ProductForm& pf) {
  const BagLayout& below = child.layout();
  const auto k = layout.size();
  const CostModel& f = ctx.model();
  auto down = [p](int q) { return q < p ? q : q - 1; };

  // Child edges at w: (child edge index, other endpoint in the parent bag).
  std::vector<std::pair<int, int>> incident;
  for (int e = 0; e < below.edge_count(); ++e) {
    auto [a, b] = below.edges()[e];
    if (a == p) incident.emplace_back(e, down(b));
    if (b == p) incident.emplace_back(e, down(a));
  }
  const std::vector<int> to_child = embed_edges(below, layout, p);
  const std::uint32_t subsets = std::uint32_t{1} << incident.size();
  const int cap_w = below.caps()[p];

  SliceAccumulator acc(layout);
  std::vector<int> x(k);
  for (std::size_t r = 0; r < pf.size(); ++r) {
    const int* xu = pf.x(r);
    for (int q = 0; q < static_cast<int>(below.size()); ++q)
      if (q != p) x[down(q)] = xu[q];
    std::uint64_t base = 0;
    for (std::size_t a = 0; a < k; ++a) base += static_cast<std::uint64_t>(x[a]) * layout.stride(static_cast<int>(a));
    for (std::uint32_t s = 0; s < subsets; ++s) {
      std::uint64_t index = base;
      std::uint64_t s_mask = 0;
      int c_w = xu[p];
      bool fits = true;
      for (std::size_t t = 0; t < incident.size(); ++t) {
        if (!(s >> t & 1U)) continue;
        auto [e, other] = incident[t];
        s_mask |= std::uint64_t{1} << e;
        index += layout.stride(other);
        if (x[other] + 1 > layout.caps()[other]) fits = false;
        ++c_w;
      }
      // Only reachable when caps bind; the child state would not exist.
      if (!fits || c_w > cap_w) continue;
      acc.offer(SliceCandidate{index, pf.below[r] + f(forgotten, c_w), static_cast<std::uint32_t>(r), 0, c_w, s_mask});
    }
  }
  const std::vector<SliceCandidate> rows = acc.finish();
  return expand(std::move(layout), f, rows, [&](std::size_t r, std::uint64_t mask) -> Choice {
    const std::uint64_t child_mask = remap_mask(mask, to_child) | rows[r].extra;
    return ForgetFrom{pf.entry(child_mask, rows[r].source)};
  });
}

// Min-plus convolution of B_left and B_right. Scanning left then right in
// key order and keeping the first minimum picks the smallest left x; the
// smallest left key overall then has F = {}, so the left child keeps no bag
// edges and the right child takes all of F.
StateTable join_factored(const DpContext& ctx, BagLayout layout, const ProductForm& lf, const ProductForm& rf) {
  const auto k = layout.size();
  const std::vector<int>& caps = layout.caps();

  SliceAccumulator acc(layout);
  for (std::size_t l = 0; l < lf.size(); ++l) {
    const int* ld = lf.x(l);
    std::size_t r_end = rf.size();
    if (k > 0) {
      const std::uint64_t limit = static_cast<std::uint64_t>(caps[0] - ld[0] + 1) * layout.stride(0);
      r_end = static_cast<std::size_t>(std::lower_bound(rf.index.begin(), rf.index.end(), limit) - rf.index.begin());
    }
    for (std::size_t r = 0; r < r_end; ++r) {
      const int* rd = rf.x(r);
      bool fits = true;
      for (std::size_t a = 0; a < k && fits; ++a) fits = ld[a] + rd[a] <= caps[a];
      if (!fits) continue;
      acc.offer(SliceCandidate{lf.index[l] + rf.index[r], lf.below[l] + rf.below[r], static_cast<std::uint32_t>(l),
                               static_cast<std::uint32_t>(r), 0, 0});
    }
  }
  const std::vector<SliceCandidate> rows = acc.finish();
  return expand(std::move(layout), ctx.model(), rows, [&](std::size_t r, std::uint64_t mask) -> Choice {
    return JoinFrom{lf.entry(0, rows[r].source), rf.entry(mask, rows[r].partner)};
  });
}

}  // namespace

StateTable handle_introduce(const DpContext& ctx, std::span<const Vertex> bag, Vertex introduced,
                            const StateTable& child, TableMethod method) {
  require_values(child);
  BagLayout layout = ctx.layout({bag.begin(), bag.end()});
  const int p = extra_position(layout, child.layout(), introduced);
  if (p < 0) {
    throw InvariantError("introduce of " + std::to_string(introduced + 1) + " into " + bag_text(bag) +
                         " does not match child bag " + bag_text(child.layout().vertices()));
  }
  if (method == TableMethod::Auto) {
    if (auto pf = product_form(child, ctx.model())) return introduce_factored(ctx, std::move(layout), p, child, *pf);
  }
  return introduce_direct(ctx, std::move(layout), p, child);
}

StateTable handle_forget(const DpContext& ctx, std::span<const Vertex> bag, Vertex forgotten,
                         const StateTable& child, TableMethod method) {
  require_values(child);
  BagLayout layout = ctx.layout({bag.begin(), bag.end()});
  const int p = extra_position(child.layout(), layout, forgotten);
  if (p < 0) {
    throw InvariantError("forget of " + std::to_string(forgotten + 1) + " from " +
                         bag_text(child.layout().vertices()) + " does not yield " + bag_text(bag));
  }
  if (method == TableMethod::Auto) {
    if (auto pf = product_form(child, ctx.model()))
      return forget_factored(ctx, std::move(layout), forgotten, p, child, *pf);
  }
  return forget_direct(std::move(layout), p, child);
}

StateTable handle_join(const DpContext& ctx, std::span<const Vertex> bag, const StateTable& left,
                       const StateTable& right, TableMethod method) {
  require_values(left);
  require_values(right);
  BagLayout layout = ctx.layout({bag.begin(), bag.end()});
  if (!(left.layout() == layout) || !(right.layout() == layout)) {
    throw InvariantError("join children do not share the bag " + bag_text(bag));
  }
  if (method == TableMethod::Auto) {
    auto lf = product_form(left, ctx.model());
    auto rf = lf ? product_form(right, ctx.model()) : std::nullopt;
    if (lf && rf) return join_factored(ctx, std::move(layout), *lf, *rf);
  }
  return join_direct(ctx, std::move(layout), left, right);
}

// ---------------------------------------------------------------------------
// Driver

SolveResult solve(const Graph& g, const CostModel& model, const NiceDecomposition& ntd, const SolveOptions& options) {
  DpContext ctx(g, model, options.caps);
  if (auto violations = validate_nice(g, ntd, INT_MAX); !violations.empty()) {
    throw InputError("invalid nice decomposition: " + violations.front().to_string());
  }

  SolveResult result;
  result.tables.resize(ntd.size());
  for (int id : ntd.post_order()) {
    const NiceNode& nd = ntd.node(id);
    auto& tables = result.tables;
    switch (nd.kind) {
      case NodeKind::Leaf:
        tables[id] = handle_leaf(ctx, nd.bag);
        break;
      case NodeKind::Introduce:
        tables[id] = handle_introduce(ctx, nd.bag, nd.vertex, tables[nd.children[0]], options.method);
        break;
      case NodeKind::Forget:
        tables[id] = handle_forget(ctx, nd.bag, nd.vertex, tables[nd.children[0]], options.method);
        break;
      case NodeKind::Join:
        tables[id] = handle_join(ctx, nd.bag, tables[nd.children[0]], tables[nd.children[1]], options.method);
        break;
    }
    if (!options.retain_values) {
      for (int c : nd.children) tables[c].release_values();
    }
  }

  const StateTable& root = result.tables[ntd.root()];
  if (root.size() != 1) {
    throw InvariantError("root table holds " + std::to_string(root.size()) + " states, expected exactly one");
  }
  result.optimum = root.values()[0];
  return result;
}

SubgraphSolution reconstruct(const SolveResult& result, const NiceDecomposition& ntd, const Graph& g) {
  if (result.tables.size() != ntd.size()) throw InvariantError("tables do not belong to this decomposition");
  std::vector<Edge> chosen;
  std::vector<std::pair<int, std::size_t>> stack{{ntd.root(), 0}};
  while (!stack.empty()) {
    auto [id, idx] = stack.back();
    stack.pop_back();
    const StateTable& table = result.tables[id];
    if (idx >= table.size()) {
      throw InvariantError("dangling choice link at node " + std::to_string(id) + ", entry " + std::to_string(idx));
    }
    const NiceNode& nd = ntd.node(id);
    const Choice& choice = table.choices()[idx];
    if (const auto* in = std::get_if<IntroduceFrom>(&choice); in && nd.kind == NodeKind::Introduce) {
      for (std::uint64_t mask = in->added_edges; mask; mask &= mask - 1) {
        chosen.push_back(table.layout().host_edge(__builtin_ctzll(mask)));
      }
      stack.emplace_back(nd.children[0], in->child);
    } else if (const auto* fo = std::get_if<ForgetFrom>(&choice); fo && nd.kind == NodeKind::Forget) {
      stack.emplace_back(nd.children[0], fo->child);
    } else if (const auto* jo = std::get_if<JoinFrom>(&choice); jo && nd.kind == NodeKind::Join) {
      stack.emplace_back(nd.children[0], jo->left);
      stack.emplace_back(nd.children[1], jo->right);
    } else if (!std::holds_alternative<LeafBase>(choice) || nd.kind != NodeKind::Leaf) {
      throw InvariantError("choice kind does not match node " + std::to_string(id));
    }
  }
  return SubgraphSolution(g, std::move(chosen));
}

StateCountReport state_count_report(const SolveResult& result, const NiceDecomposition& ntd) {
  StateCountReport report;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (int id : ntd.post_order()) {
    const StateTable& t = result.tables[id];
    NodeStateCount c;
    c.node = id;
    c.kind = ntd.node(id).kind;
    c.bag_size = t.layout().size();
    c.stored = t.size();
    c.bound = t.layout().state_space();
    report.total_stored += c.stored;
    if (__builtin_add_overflow(report.total_bound, c.bound, &report.total_bound)) report.total_bound = kMax;
    report.max_stored = std::max(report.max_stored, c.stored);
    report.nodes.push_back(c);
  }
  return report;
}

}  // namespace degseq
