#include "degseq/cost_model.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "degseq/errors.hpp"

namespace degseq {

std::int64_t ExtendedCost::value() const {
  if (!value_) throw InvariantError("value() called on infinite cost");
  return *value_;
}

ExtendedCost operator+(ExtendedCost a, ExtendedCost b) {
  if (!a.is_finite() || !b.is_finite()) return ExtendedCost::infinity();
  std::int64_t sum = 0;
  if (__builtin_add_overflow(*a.value_, *b.value_, &sum)) throw InvariantError("cost overflow in addition");
  return ExtendedCost(sum);
}

CostModel::CostModel(std::vector<std::vector<std::int64_t>> tables) : tables_(std::move(tables)) {
  const auto n = static_cast<std::int64_t>(tables_.size());
  constexpr std::int64_t kLimit = std::int64_t{1} << 62;
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    if (static_cast<std::int64_t>(tables_[i].size()) != n) {
      throw InputError("cost table of vertex " + std::to_string(i + 1) + " has " + std::to_string(tables_[i].size()) +
                       " entries, expected " + std::to_string(n));
    }
    for (std::int64_t x : tables_[i]) {
      if (x == std::numeric_limits<std::int64_t>::min() || std::llabs(x) >= kLimit) {
        throw InputError("cost entry of vertex " + std::to_string(i + 1) + " exceeds magnitude bound");
      }
      max_abs_ = std::max(max_abs_, static_cast<std::int64_t>(std::llabs(x)));
    }
  }
  if (n > 0 && max_abs_ > 0 && max_abs_ >= kLimit / n) {
    throw InputError("cost magnitude bound violated: n * max|f| must stay below 2^62");
  }
}

std::int64_t evaluate_degrees(const CostModel& model, const std::vector<int>& degrees) {
  if (static_cast<int>(degrees.size()) != model.n()) {
    throw InputError("cost model has " + std::to_string(model.n()) + " vertices, degree vector has " +
                     std::to_string(degrees.size()));
  }
  std::int64_t total = 0;
  for (int i = 0; i < model.n(); ++i) {
    if (degrees[i] < 0 || degrees[i] >= model.n()) throw InvariantError("degree outside table domain");
    total += model(i, degrees[i]);
  }
  return total;
}

ExtendedCost evaluate(const CostModel& model, const SubgraphSolution& sol) {
  if (model.n() != sol.host().n()) {
    throw InputError("cost model has " + std::to_string(model.n()) + " vertices, graph has " +
                     std::to_string(sol.host().n()));
  }
  return evaluate_degrees(model, degrees(sol));
}

std::vector<std::int64_t> factor_table(const std::vector<int>& allowed, int n) {
  if (allowed.empty()) throw InputError("factor degree set must be nonempty");
  std::vector<std::int64_t> t(static_cast<std::size_t>(n), 1);
  for (int b : allowed) {
    if (b < 0 || b >= n) throw InputError("factor degree " + std::to_string(b) + " outside 0.." + std::to_string(n - 1));
    t[b] = 0;
  }
  return t;
}

std::vector<std::int64_t> interval_table(int lo, int hi, int n) {
  if (lo < 0 || hi > n - 1 || lo > hi) {
    throw InputError("interval [" + std::to_string(lo) + "," + std::to_string(hi) + "] must satisfy 0 <= l <= u <= " +
                     std::to_string(n - 1));
  }
  std::vector<std::int64_t> t(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) t[x] = x <= lo ? lo - x : (x <= hi ? 0 : x - hi);
  return t;
}

std::vector<std::int64_t> target_table(int b, int n) {
  if (b < 0 || b > n - 1) throw InputError("target degree " + std::to_string(b) + " outside 0.." + std::to_string(n - 1));
  return interval_table(b, b, n);
}

std::vector<std::int64_t> cubic_main_table(int n) {
  std::vector<std::int64_t> t(static_cast<std::size_t>(n));
  for (std::int64_t x = 0; x < n; ++x) t[x] = (x - 3) * (x - 3);
  return t;
}

std::vector<std::int64_t> cubic_other_table(int n) {
  std::vector<std::int64_t> t(static_cast<std::size_t>(n));
  for (std::int64_t x = 0; x < n; ++x) t[x] = x * (x - 3) * (x - 3);
  return t;
}

CostModel from_factor(const std::vector<std::vector<int>>& sets, int n) {
  if (static_cast<int>(sets.size()) != n) throw InputError("factor spec needs one set per vertex");
  std::vector<std::vector<std::int64_t>> tables;
  tables.reserve(sets.size());
  for (const auto& s : sets) tables.push_back(factor_table(s, n));
  return CostModel(std::move(tables));
}

CostModel from_interval(const std::vector<int>& lower, const std::vector<int>& upper, int n) {
  if (static_cast<int>(lower.size()) != n || static_cast<int>(upper.size()) != n) {
    throw InputError("interval spec needs one (l, u) pair per vertex");
  }
  std::vector<std::vector<std::int64_t>> tables;
  tables.reserve(lower.size());
  for (int i = 0; i < n; ++i) tables.push_back(interval_table(lower[i], upper[i], n));
  return CostModel(std::move(tables));
}

CostModel from_b_matching(const std::vector<int>& targets, int n) {
  if (static_cast<int>(targets.size()) != n) throw InputError("b-matching spec needs one target per vertex");
  std::vector<std::vector<std::int64_t>> tables;
  tables.reserve(targets.size());
  for (int b : targets) tables.push_back(target_table(b, n));
  return CostModel(std::move(tables));
}

CostModel cubic_gadget(Vertex special, int n) {
  if (n < 4) throw InputError("cubic gadget needs n >= 4, got " + std::to_string(n));
  if (special < 0 || special >= n) throw InputError("gadget vertex out of range");
  std::vector<std::vector<std::int64_t>> tables;
  tables.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) tables.push_back(i == special ? cubic_main_table(n) : cubic_other_table(n));
  return CostModel(std::move(tables));
}

}  // namespace degseq
