#include "mixedlayout/solver.hpp"

#include <algorithm>
#include <numeric>

#include "mixedlayout/error.hpp"
#include "mixedlayout/patterns.hpp"

namespace mixedlayout {

namespace {

class Backtracker {
 public:
  Backtracker(const OrderedGraph& g, const PageSpec& spec, uint64_t budget)
      : spec_(spec), table_(g), budget_(budget) {
    const int m = g.num_edges();
    std::vector<int> degree(m);
    for (int e = 0; e < m; ++e) degree[e] = (table_.cross[e] | table_.nest[e]).count();
    order_.resize(m);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return degree[a] > degree[b]; });
    const int p = spec.size();
    blocked_.assign(p, DynBitset(m));
    load_.assign(p, 0);
    page_of_.assign(m, -1);
    unplaced_ = DynBitset(m);
    for (int e = 0; e < m; ++e) unplaced_.set(e);
  }

  SolveResult run() {
    SolveResult r;
    try {
      r.feasible = place(0);
    } catch (const Exhausted&) {
      r.budget_hit = true;
    }
    r.nodes = nodes_;
    if (r.feasible) r.assignment = PageAssignment{spec_, page_of_};
    return r;
  }

 private:
  struct Exhausted {};

  const DynBitset& conflicts(int page, int e) const {
    return spec_.kinds[page] == PageKind::Stack ? table_.cross[e] : table_.nest[e];
  }

  // With every page open, some unplaced edge may already be blocked
  // everywhere.
  bool dead_end() const {
    for (int l : load_)
      if (l == 0) return false;
    DynBitset stuck = unplaced_;
    for (const auto& b : blocked_) {
      stuck &= b;
      if (stuck.none()) return false;
    }
    return true;
  }

  bool place(int depth) {
    if (depth == static_cast<int>(order_.size())) return true;
    if (++nodes_ > budget_) throw Exhausted{};
    const int e = order_[depth];
    const int pages = spec_.size();
    bool opened_stack = false;
    bool opened_queue = false;
    for (int p = 0; p < pages; ++p) {
      if (blocked_[p].test(e)) continue;
      if (load_[p] == 0) {
        // Empty pages of one kind are interchangeable.
        bool& opened = spec_.kinds[p] == PageKind::Stack ? opened_stack : opened_queue;
        if (opened) continue;
        opened = true;
      }
      DynBitset saved = blocked_[p];
      blocked_[p] |= conflicts(p, e);
      ++load_[p];
      page_of_[e] = p;
      unplaced_.reset(e);
      if (!dead_end() && place(depth + 1)) return true;
      unplaced_.set(e);
      page_of_[e] = -1;
      --load_[p];
      blocked_[p] = std::move(saved);
    }
    return false;
  }

  const PageSpec& spec_;
  ConflictTable table_;
  uint64_t budget_;
  uint64_t nodes_ = 0;
  std::vector<int> order_;
  std::vector<DynBitset> blocked_;
  std::vector<int> load_;
  std::vector<int> page_of_;
  DynBitset unplaced_;
};

// Index of each edge's nesting depth (0 = outermost).
std::vector<int> nesting_depth(const OrderedGraph& g) {
  const int m = g.num_edges();
  std::vector<int> depth(m, 0);
  // Ids are sorted by left endpoint, so containers come first.
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < b; ++a)
      if (relation(g.edge(a), g.edge(b)) == Relation::Nest && g.edge(a).u < g.edge(b).u)
        depth[b] = std::max(depth[b], depth[a] + 1);
  return depth;
}

}  // namespace

PageAssignment rainbow_depth_layout(const OrderedGraph& g) {
  auto depth = nesting_depth(g);
  int pages = depth.empty() ? 0 : *std::max_element(depth.begin(), depth.end()) + 1;
  return PageAssignment{PageSpec::split(0, pages), depth};
}

SolveResult feasible(const OrderedGraph& g, const PageSpec& spec, uint64_t budget) {
  const int m = g.num_edges();
  SolveResult r;
  if (m == 0) {
    r.feasible = true;
    r.assignment = PageAssignment{spec, {}};
    return r;
  }
  if (spec.size() == 0) return r;
  if (spec.stacks() == 0) {
    auto layout = rainbow_depth_layout(g);
    if (layout.num_pages() <= spec.size()) {
      r.feasible = true;
      r.assignment = PageAssignment{spec, layout.page_of};
    }
    return r;
  }
  if (spec.queues() == 0 && m <= 512) {
    try {
      if (largest_twist(g, 1'000'000).k > spec.size()) return r;
    } catch (const Error&) {
      // fall through to the search
    }
  }
  return Backtracker(g, spec, budget).run();
}

namespace {

struct SplitOutcome {
  std::optional<PageAssignment> layout;
  bool unknown = false;
};

// Tries splits (k,0), (k-1,1), ..., (0,k) in order.
SplitOutcome try_splits(const OrderedGraph& g, int k, uint64_t budget, uint64_t& nodes) {
  SplitOutcome out;
  for (int s = k; s >= 0; --s) {
    auto r = feasible(g, PageSpec::split(s, k - s), budget);
    nodes += r.nodes;
    if (r.feasible) {
      out.layout = r.assignment;
      return out;
    }
    if (r.budget_hit) out.unknown = true;
  }
  return out;
}

}  // namespace

PageNumber mixed_page_number(const OrderedGraph& g, uint64_t budget) {
  PageNumber res;
  if (g.num_edges() == 0) return res;
  for (int k = 1;; ++k) {
    auto out = try_splits(g, k, budget, res.nodes);
    if (out.layout) {
      res.k = k;
      res.assignment = *out.layout;
      return res;
    }
    if (out.unknown)
      throw Error(ErrorCode::BudgetExceeded, "could not decide " + std::to_string(k) + " pages within budget");
  }
}

PageNumber stack_number(const OrderedGraph& g, uint64_t budget) {
  PageNumber res;
  if (g.num_edges() == 0) return res;
  int k = 1;
  if (g.num_edges() <= 512) {
    try {
      k = std::max(1, largest_twist(g, 1'000'000).k);
    } catch (const Error&) {
    }
  }
  for (;; ++k) {
    auto r = feasible(g, PageSpec::split(k, 0), budget);
    res.nodes += r.nodes;
    if (r.feasible) {
      res.k = k;
      res.assignment = *r.assignment;
      return res;
    }
    if (r.budget_hit)
      throw Error(ErrorCode::BudgetExceeded, "could not decide " + std::to_string(k) + " stacks within budget");
  }
}

PageNumber queue_number(const OrderedGraph& g) {
  PageNumber res;
  res.assignment = rainbow_depth_layout(g);
  res.k = res.assignment.num_pages();
  return res;
}

bool fits_k_pages(const OrderedGraph& g, int k, uint64_t budget, uint64_t* nodes) {
  uint64_t local = 0;
  auto out = try_splits(g, k, budget, local);
  if (nodes) *nodes += local;
  if (out.layout) return true;
  if (out.unknown) throw Error(ErrorCode::BudgetExceeded, "split search exceeded budget");
  return false;
}

CriticalVerdict criticality(const OrderedGraph& g, CriticalMode mode, uint64_t budget) {
  CriticalVerdict v;
  auto fits = [&](const OrderedGraph& h) {
    if (mode.kind == CriticalMode::Kind::Total) return fits_k_pages(h, mode.k, budget, &v.nodes);
    auto r = feasible(h, PageSpec::split(mode.s, mode.q), budget);
    v.nodes += r.nodes;
    if (r.budget_hit) throw Error(ErrorCode::BudgetExceeded, "split search exceeded budget");
    return r.feasible;
  };
  if (fits(g)) return v;
  v.infeasible = true;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!fits(g.without_edge(e))) {
      v.blocking_edge = e;
      return v;
    }
  }
  v.critical = true;
  return v;
}

}  // namespace mixedlayout
