#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "degseq/graph.hpp"

namespace degseq {

// An integer cost or +infinity. Infinity is absorbing under addition and
// compares greater than every finite value.
class ExtendedCost {
 public:
  constexpr ExtendedCost() = default;  // +infinity
  constexpr ExtendedCost(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtendedCost infinity() { return ExtendedCost(); }

  constexpr bool is_finite() const { return value_.has_value(); }
  // Throws InvariantError on infinity.
  std::int64_t value() const;

  // Throws InvariantError if a finite sum overflows.
  friend ExtendedCost operator+(ExtendedCost a, ExtendedCost b);
  ExtendedCost& operator+=(ExtendedCost other) { return *this = *this + other; }

  friend constexpr bool operator==(const ExtendedCost&, const ExtendedCost&) = default;
  friend constexpr std::strong_ordering operator<=>(const ExtendedCost& a, const ExtendedCost& b) {
    if (a.is_finite() && b.is_finite()) return *a.value_ <=> *b.value_;
    return b.is_finite() <=> a.is_finite();
  }

  std::string to_string() const { return is_finite() ? std::to_string(*value_) : "inf"; }
  friend std::ostream& operator<<(std::ostream& os, const ExtendedCost& c) { return os << c.to_string(); }

 private:
  std::optional<std::int64_t> value_;
};

// Per-vertex cost tables f_i : {0, ..., n-1} -> Z, stored densely.
//
// Construction enforces n * max|f_i(x)| < 2^62, which keeps every partial sum
// the solver forms (sums of at most n table entries, plus a bounded number of
// differences) exactly representable in int64.
class CostModel {
 public:
  CostModel() = default;
  // Throws InputError if a table has the wrong length or the magnitude bound
  // is violated.
  explicit CostModel(std::vector<std::vector<std::int64_t>> tables);

  int n() const { return static_cast<int>(tables_.size()); }
  std::int64_t operator()(Vertex i, int x) const { return tables_[i][x]; }
  const std::vector<std::int64_t>& table(Vertex i) const { return tables_[i]; }
  const std::vector<std::vector<std::int64_t>>& tables() const { return tables_; }
  std::int64_t max_abs_entry() const { return max_abs_; }

  friend bool operator==(const CostModel& a, const CostModel& b) { return a.tables_ == b.tables_; }

 private:
  std::vector<std::vector<std::int64_t>> tables_;
  std::int64_t max_abs_ = 0;
};

// Sum over i of f_i(d_i(G)). Always finite for a valid solution.
ExtendedCost evaluate(const CostModel& model, const SubgraphSolution& sol);
// Same, from a degree vector.
std::int64_t evaluate_degrees(const CostModel& model, const std::vector<int>& degrees);

// Single-table builders. `n` is the table length.
std::vector<std::int64_t> factor_table(const std::vector<int>& allowed, int n);  // 0 on B, 1 off B
std::vector<std::int64_t> interval_table(int lo, int hi, int n);  // distance to [lo, hi]
std::vector<std::int64_t> target_table(int b, int n);              // |x - b|
std::vector<std::int64_t> cubic_main_table(int n);                 // (x-3)^2
std::vector<std::int64_t> cubic_other_table(int n);                // x(x-3)^2

// General factor: f_i = 0 on B_i and 1 elsewhere, so the optimum is 0 exactly
// when some G has d_i(G) in B_i for all i. Sets use 0-based degree values.
CostModel from_factor(const std::vector<std::vector<int>>& sets, int n);

// (l, u)-factor with the convex penalty max(l - x, 0, x - u).
CostModel from_interval(const std::vector<int>& lower, const std::vector<int>& upper, int n);

// b-matching: f_i(x) = |x - b_i|. Perfect matching is b_i = 1.
CostModel from_b_matching(const std::vector<int>& targets, int n);

// Cubic-subgraph gadget: (x-3)^2 at `special`, x(x-3)^2 elsewhere. The
// minimum over all choices of `special` is 0 iff H has a nonempty 3-regular
// subgraph. Requires n >= 4.
CostModel cubic_gadget(Vertex special, int n);

}  // namespace degseq
