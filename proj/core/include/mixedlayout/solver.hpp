#pragma once

#include <cstdint>
#include <optional>

#include "mixedlayout/graph.hpp"

namespace mixedlayout {

inline constexpr uint64_t kDefaultBudget = 100'000'000;

struct SolveResult {
  bool feasible = false;
  std::optional<PageAssignment> assignment;
  uint64_t nodes = 0;
  bool budget_hit = false;  // the answer is unknown, never "infeasible"

  bool infeasible() const { return !feasible && !budget_hit; }
};

// Exact decision by backtracking over edges in descending conflict degree.
SolveResult feasible(const OrderedGraph& g, const PageSpec& spec, uint64_t budget = kDefaultBudget);

struct PageNumber {
  int k = 0;
  PageAssignment assignment;
  uint64_t nodes = 0;
};

// Smallest k with some feasible split. Throws BudgetExceeded when a split
// below the answer could not be decided.
PageNumber mixed_page_number(const OrderedGraph& g, uint64_t budget = kDefaultBudget);
PageNumber stack_number(const OrderedGraph& g, uint64_t budget = kDefaultBudget);
// Equals the largest rainbow; the layout puts each edge on its nesting depth.
PageNumber queue_number(const OrderedGraph& g);

// Queue layout with one page per nesting depth.
PageAssignment rainbow_depth_layout(const OrderedGraph& g);

struct CriticalMode {
  enum class Kind { Split, Total } kind = Kind::Total;
  int s = 0;
  int q = 0;
  int k = 0;

  static CriticalMode split(int s, int q) { return {Kind::Split, s, q, s + q}; }
  static CriticalMode total(int k) { return {Kind::Total, 0, 0, k}; }
};

struct CriticalVerdict {
  bool critical = false;
  bool infeasible = false;  // g itself fails the mode
  EdgeId blocking_edge = -1;  // an edge whose deletion still fails, if any
  uint64_t nodes = 0;
};

// Split mode: infeasible at (s,q) and every G-e feasible at (s,q).
// Total mode: infeasible at every split of k and every G-e feasible at
// some split. Throws BudgetExceeded if any decision stays unknown.
CriticalVerdict criticality(const OrderedGraph& g, CriticalMode mode, uint64_t budget = kDefaultBudget);

// Feasible at some split s+q=k; throws BudgetExceeded on unknown.
bool fits_k_pages(const OrderedGraph& g, int k, uint64_t budget = kDefaultBudget, uint64_t* nodes = nullptr);

}  // namespace mixedlayout
