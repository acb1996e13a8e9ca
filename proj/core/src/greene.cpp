#include "mixedlayout/greene.hpp"

#include <algorithm>
#include <stdexcept>

#include "diamond_search.hpp"
#include "min_cost_flow.hpp"

namespace mixedlayout {

std::vector<int> rsk_shape(const GridMatching& m) {
  std::vector<std::vector<int>> rows;
  for (int x : m.pi()) {
    for (auto& row : rows) {
      auto it = std::upper_bound(row.begin(), row.end(), x);
      if (it == row.end()) {
        row.push_back(x);
        x = 0;
        break;
      }
      std::swap(*it, x);
    }
    if (x != 0) rows.push_back({x});
  }
  std::vector<int> shape;
  for (const auto& row : rows) shape.push_back(static_cast<int>(row.size()));
  return shape;
}

std::vector<int> conjugate(const std::vector<int>& partition) {
  std::vector<int> out;
  if (partition.empty()) return out;
  for (int col = 1; col <= partition.front(); ++col) {
    int len = 0;
    while (len < static_cast<int>(partition.size()) && partition[len] >= col) ++len;
    out.push_back(len);
  }
  return out;
}

FerrersDiagram ferrers(const GridMatching& m) {
  FerrersDiagram d;
  d.rows = rsk_shape(m);
  auto cols = conjugate(d.rows);
  int sum = 0;
  for (int r : d.rows) d.c.push_back(sum += r);
  sum = 0;
  for (int c : cols) d.a.push_back(sum += c);
  d.w = static_cast<int>(d.rows.size());
  d.h = static_cast<int>(cols.size());
  while (d.square < d.w && d.rows[d.square] >= d.square + 1) ++d.square;
  return d;
}

namespace {

// Cover pairs of the dominance order on points (x = index, y = ys[x]):
// b covers a iff x_a < x_b, y_a < y_b and no point lies strictly between.
std::vector<std::pair<int, int>> cover_pairs(const std::vector<int>& ys) {
  const int m = static_cast<int>(ys.size());
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < m; ++a) {
    int ceiling = m + 1;
    for (int b = a + 1; b < m; ++b) {
      if (ys[b] > ys[a] && ys[b] < ceiling) {
        out.push_back({a, b});
        ceiling = ys[b];
      }
    }
  }
  return out;
}

}  // namespace

ChainFamily max_family(const GridMatching& gm, FamilyKind kind, int k) {
  ChainFamily fam;
  fam.kind = kind;
  const int m = gm.size();
  if (k < 1) throw std::invalid_argument("max_family needs k >= 1");
  if (m == 0) return fam;
  std::vector<int> ys = gm.pi();
  if (kind == FamilyKind::Antichains)
    for (auto& y : ys) y = m + 1 - y;

  // Node ids follow the column order, so every arc points forward.
  const int source = 0;
  const int sink = 2 * m + 1;
  auto in = [](int c) { return 1 + 2 * c; };
  auto out = [](int c) { return 2 + 2 * c; };
  detail::MinCostFlow flow(2 * m + 2);
  std::vector<std::pair<int, int>> element_arc(m);
  for (int c = 0; c < m; ++c) {
    flow.add_arc(source, in(c), k, 0);
    element_arc[c] = flow.add_arc(in(c), out(c), 1, -1);
    flow.add_arc(in(c), out(c), k, 0);
    flow.add_arc(out(c), sink, k, 0);
  }
  for (auto [a, b] : cover_pairs(ys)) flow.add_arc(out(a), in(b), k, 0);
  auto [units, cost] = flow.solve(source, sink, k, true);
  (void)cost;

  // Peel unit paths off the forward flow.
  std::vector<std::vector<std::pair<int, int>>> fwd(2 * m + 2);  // (to, remaining flow)
  std::vector<std::vector<char>> is_element(2 * m + 2);
  for (int v = 0; v < 2 * m + 2; ++v) {
    const auto& arcs = flow.arcs(v);
    for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
      if (arcs[i].cost < 0 || (arcs[i].cost == 0 && arcs[i].to > v)) {
        int f = flow.flow(v, i);
        fwd[v].push_back({arcs[i].to, f});
        bool elem = v % 2 == 1 && v < 2 * m + 1 && element_arc[(v - 1) / 2] == std::pair<int, int>{v, i};
        is_element[v].push_back(elem);
      }
    }
  }
  for (int u = 0; u < units; ++u) {
    std::vector<EdgeId> part;
    int v = source;
    while (v != sink) {
      bool moved = false;
      for (size_t i = 0; i < fwd[v].size(); ++i) {
        auto& [to, f] = fwd[v][i];
        if (f <= 0) continue;
        --f;
        if (is_element[v][i]) part.push_back((v - 1) / 2);
        v = to;
        moved = true;
        break;
      }
      if (!moved) throw std::logic_error("flow decomposition stuck");
    }
    if (!part.empty()) {
      fam.covered += static_cast<int>(part.size());
      fam.parts.push_back(std::move(part));
    }
  }
  return fam;
}

namespace {

// Kahn order over `n` items given "a before b" constraints; throws on a
// cycle, which would contradict the intersection structure.
constexpr uint64_t kSearchBudget = 50'000'000;

std::vector<int> topo_order(int n, const std::vector<std::pair<int, int>>& before) {
  std::vector<std::vector<int>> next(n);
  std::vector<int> indeg(n, 0);
  for (auto [a, b] : before) {
    next[a].push_back(b);
    ++indeg[b];
  }
  std::vector<int> order;
  std::vector<int> ready;
  for (int i = n - 1; i >= 0; --i)
    if (indeg[i] == 0) ready.push_back(i);
  while (!ready.empty()) {
    std::sort(ready.begin(), ready.end(), std::greater<>());
    int v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (int w : next[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  if (static_cast<int>(order.size()) != n) return {};  // the families cross each other
  return order;
}

}  // namespace

PatternWitness diamond_witness(const GridMatching& gm) {
  const int m = gm.size();
  if (m == 0) return make_witness(PatternKind::Diamond, 0, {});
  const int k = ferrers(gm).square;
  auto chains = max_family(gm, FamilyKind::Chains, k).parts;
  auto antichains = max_family(gm, FamilyKind::Antichains, k).parts;
  if (static_cast<int>(chains.size()) != k || static_cast<int>(antichains.size()) != k)
    throw std::logic_error("maximum family has fewer than k parts");

  std::vector<int> chain_of(m, -1), anti_of(m, -1);
  for (int i = 0; i < k; ++i)
    for (int c : chains[i]) chain_of[c] = i;
  for (int j = 0; j < k; ++j)
    for (int c : antichains[j]) anti_of[c] = j;

  std::vector<std::vector<int>> cell(k, std::vector<int>(k, -1));
  int shared = 0;
  for (int c = 0; c < m; ++c) {
    if (chain_of[c] < 0 || anti_of[c] < 0) continue;
    int& slot = cell[chain_of[c]][anti_of[c]];
    if (slot >= 0) throw std::logic_error("chain meets antichain twice");
    slot = c;
    ++shared;
  }
  if (shared != k * k) throw std::logic_error("families do not intersect in k^2 elements");

  // Parts are sorted by column, so consecutive shared elements give the
  // precedence among antichains (along a chain) and among chains (along an
  // antichain).
  std::vector<std::pair<int, int>> anti_before, chain_before;
  for (const auto& part : chains) {
    int prev = -1;
    for (int c : part) {
      if (anti_of[c] < 0) continue;
      if (prev >= 0) anti_before.push_back({anti_of[prev], anti_of[c]});
      prev = c;
    }
  }
  for (const auto& part : antichains) {
    int prev = -1;
    for (int c : part) {
      if (chain_of[c] < 0) continue;
      if (prev >= 0) chain_before.push_back({chain_of[prev], chain_of[c]});
      prev = c;
    }
  }
  auto row_order = topo_order(k, chain_before);
  auto col_order = topo_order(k, anti_before);
  if (!row_order.empty() && !col_order.empty()) {
    std::vector<std::vector<EdgeId>> lab(k, std::vector<EdgeId>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lab[i][j] = cell[row_order[i]][col_order[j]];
    if (is_diamond(gm, lab)) return make_witness(PatternKind::Diamond, k, std::move(lab));
  }

  // Families whose orders disagree: search the k^2 shared columns, then
  // the whole matching.
  std::vector<int> cols;
  for (int c = 0; c < m; ++c)
    if (chain_of[c] >= 0 && anti_of[c] >= 0) cols.push_back(c);
  std::vector<int> rows;
  for (int c : cols) rows.push_back(gm.row(c));
  std::vector<int> sorted_rows = rows;
  std::sort(sorted_rows.begin(), sorted_rows.end());
  std::vector<int> sub_pi;
  for (int y : rows) sub_pi.push_back(static_cast<int>(std::lower_bound(sorted_rows.begin(), sorted_rows.end(), y) - sorted_rows.begin()) + 1);
  if (auto lab = detail::find_diamond(GridMatching(sub_pi), k, kSearchBudget)) {
    for (auto& row : *lab)
      for (auto& e : row) e = cols[e];
    return make_witness(PatternKind::Diamond, k, std::move(*lab));
  }
  auto lab = detail::find_diamond(gm, k, kSearchBudget);
  if (!lab) throw std::logic_error("square without a diamond");
  return make_witness(PatternKind::Diamond, k, std::move(*lab));
}

namespace {

// Moves every edge of a page onto other pages when all of them fit;
// repeats until no page can be emptied. Keeps the assignment valid.
void absorb_pages(const OrderedGraph& g, PageAssignment& a) {
  auto fits = [&](const std::vector<EdgeId>& page, PageKind kind, EdgeId e) {
    for (EdgeId f : page) {
      Relation r = relation(g.edge(e), g.edge(f));
      if (kind == PageKind::Stack ? r == Relation::Cross : r == Relation::Nest) return false;
    }
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<EdgeId>> members(a.spec.size());
    for (EdgeId e = 0; e < static_cast<int>(a.page_of.size()); ++e) members[a.page_of[e]].push_back(e);
    std::vector<int> pages;
    for (int p = 0; p < a.spec.size(); ++p)
      if (!members[p].empty()) pages.push_back(p);
    std::stable_sort(pages.begin(), pages.end(),
                     [&](int x, int y) { return members[x].size() < members[y].size(); });
    for (int victim : pages) {
      auto trial = members;
      std::vector<std::pair<EdgeId, int>> moves;
      bool ok = true;
      for (EdgeId e : members[victim]) {
        int target = -1;
        for (int p : pages)
          if (p != victim && fits(trial[p], a.spec.kinds[p], e)) {
            target = p;
            break;
          }
        if (target < 0) {
          ok = false;
          break;
        }
        trial[target].push_back(e);
        moves.push_back({e, target});
      }
      if (ok) {
        for (auto [e, p] : moves) a.page_of[e] = p;
        changed = true;
        break;
      }
    }
  }
}

}  // namespace

PageAssignment approx_mixed_layout(const GridMatching& gm) {
  const int m = gm.size();
  PageAssignment a;
  if (m == 0) return a;
  const int k = ferrers(gm).square;
  auto chains = max_family(gm, FamilyKind::Chains, k).parts;
  auto antichains = max_family(gm, FamilyKind::Antichains, k).parts;
  a.spec = PageSpec::split(k, k);
  a.page_of.assign(m, -1);
  for (int j = 0; j < static_cast<int>(antichains.size()); ++j)
    for (int c : antichains[j]) a.page_of[c] = j;
  for (int i = 0; i < static_cast<int>(chains.size()); ++i)
    for (int c : chains[i]) a.page_of[c] = k + i;
  for (int p : a.page_of)
    if (p < 0) throw std::logic_error("k chains and k antichains leave an element uncovered");
  auto g = gm.to_graph();
  absorb_pages(g, a);
  return a.compacted();
}

}  // namespace mixedlayout
