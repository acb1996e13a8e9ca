#include "mixedlayout/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <map>
#include <set>
#include <stdexcept>

#include "mixedlayout/clique.hpp"
#include "mixedlayout/error.hpp"
#include "mixedlayout/greene.hpp"
#include "mixedlayout/solver.hpp"

namespace mixedlayout {

int IntervalPartition::block_of(Vertex v) const {
  if (v < 0 || v >= num_vertices) throw Error(ErrorCode::OutOfRange, "vertex " + std::to_string(v));
  return static_cast<int>(std::upper_bound(starts.begin(), starts.end(), v) - starts.begin()) - 1;
}

IntervalPartition IntervalPartition::singletons(int n) {
  IntervalPartition p{n, {}};
  for (int v = 0; v < n; ++v) p.starts.push_back(v);
  return p;
}

IntervalPartition IntervalPartition::whole(int n) {
  return n == 0 ? IntervalPartition{0, {}} : IntervalPartition{n, {0}};
}

IntervalPartition IntervalPartition::from_starts(int n, std::vector<Vertex> starts) {
  bool ok = n == 0 ? starts.empty() : !starts.empty() && starts[0] == 0;
  for (size_t i = 1; i < starts.size() && ok; ++i) ok = starts[i - 1] < starts[i];
  if (ok && !starts.empty()) ok = starts.back() < n;
  if (!ok) throw Error(ErrorCode::InvalidInput, "interval starts must begin at 0 and increase below n");
  return {n, std::move(starts)};
}

namespace {

bool crosses(const Edge& a, const Edge& b) { return relation(a, b) == Relation::Cross; }

}  // namespace

IntervalPartition interval_partition_by_twists(const OrderedGraph& g, int k, uint64_t budget) {
  if (k < 1) throw Error(ErrorCode::BadParams, "k must be >= 1");
  const int n = g.num_vertices();
  IntervalPartition out{n, {}};
  if (n == 0) return out;
  std::vector<std::vector<EdgeId>> ending_at(n);
  for (EdgeId e = 0; e < g.num_edges(); ++e) ending_at[g.edge(e).v].push_back(e);

  Vertex start = 0;
  out.starts.push_back(0);
  std::vector<EdgeId> inside;
  for (Vertex x = 0; x < n; ++x) {
    bool close = false;
    for (EdgeId e : ending_at[x]) {
      if (g.edge(e).u < start) continue;
      // A new (k+1)-twist must use e: look for a k-clique among e's
      // crossing partners.
      std::vector<EdgeId> nbrs;
      for (EdgeId f : inside)
        if (crosses(g.edge(e), g.edge(f))) nbrs.push_back(f);
      inside.push_back(e);
      if (static_cast<int>(nbrs.size()) < k) continue;
      std::vector<DynBitset> adj(nbrs.size(), DynBitset(static_cast<int>(nbrs.size())));
      for (size_t i = 0; i < nbrs.size(); ++i)
        for (size_t j = i + 1; j < nbrs.size(); ++j)
          if (crosses(g.edge(nbrs[i]), g.edge(nbrs[j]))) {
            adj[i].set(static_cast<int>(j));
            adj[j].set(static_cast<int>(i));
          }
      if (static_cast<int>(max_clique(adj, budget).size()) >= k) close = true;
    }
    if (close && x + 1 < n) {
      start = x + 1;
      out.starts.push_back(start);
      inside.clear();
    }
  }
  return out;
}

Quotient quotient_graph(const OrderedGraph& g, const IntervalPartition& parts) {
  if (parts.num_vertices != g.num_vertices()) throw Error(ErrorCode::InvalidInput, "partition size does not match");
  Quotient q;
  std::vector<std::pair<Edge, EdgeId>> images;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    int a = parts.block_of(g.edge(e).u);
    int b = parts.block_of(g.edge(e).v);
    if (a == b)
      q.intra.push_back(e);
    else
      images.push_back({{a, b}, e});
  }
  std::sort(images.begin(), images.end());
  std::vector<Edge> edges;
  for (auto& [img, e] : images) {
    edges.push_back(img);
    q.lift.push_back(e);
  }
  q.graph = build_graph(parts.num_blocks(), std::move(edges), true);
  return q;
}

std::vector<EdgeId> block_edges(const OrderedGraph& g, const IntervalPartition& parts, int block) {
  std::vector<EdgeId> out;
  const Vertex lo = parts.begin(block);
  const Vertex hi = parts.end(block);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (g.edge(e).u >= lo && g.edge(e).v < hi) out.push_back(e);
  return out;
}

namespace {

void require_page(const OrderedGraph& g, const std::vector<EdgeId>& page, PageKind kind) {
  for (size_t i = 0; i < page.size(); ++i)
    for (size_t j = i + 1; j < page.size(); ++j) {
      Relation r = relation(g.edge(page[i]), g.edge(page[j]));
      if (kind == PageKind::Stack ? r == Relation::Cross : r == Relation::Nest)
        throw Error(ErrorCode::InvalidPage, "edges " + std::to_string(page[i]) + " and " + std::to_string(page[j]) +
                                                " conflict on one page");
    }
}

// Leaf-to-center bundle of parallel edges.
struct Bundle {
  Vertex leaf;
  Vertex center;
  std::vector<EdgeId> edges;
  int side() const { return center > leaf ? 0 : 1; }  // 0: center on the right
};

// Assigns each bundle a class color*2 + side so that every class is a star
// forest: a vertex leaves at most one star per class, and no center of a
// class is a leaf in it. Vertices are decided in reverse elimination order
// so a bundle's center is always settled first.
class ForestColoring {
 public:
  ForestColoring(const std::vector<Bundle>& bundles, const std::vector<std::vector<int>>& out_of,
                 const std::vector<Vertex>& order, int colors, uint64_t budget)
      : bundles_(bundles), out_of_(out_of), order_(order), colors_(colors), budget_(budget),
        cls_(bundles.size(), -1) {}

  bool run() { return assign(0); }
  const std::vector<int>& classes() const { return cls_; }

 private:
  bool allowed(int b, int cls) const {
    if (cls % 2 != bundles_[b].side()) return false;
    for (int o : out_of_[bundles_[b].center])
      if (cls_[o] == cls) return false;
    return true;
  }

  bool assign(size_t pos) {
    if (pos == order_.size()) return true;
    if (++nodes_ > budget_) return false;
    const auto& outs = out_of_[order_[pos]];
    return choose(pos, outs, 0);
  }

  bool choose(size_t pos, const std::vector<int>& outs, size_t i) {
    if (i == outs.size()) return assign(pos + 1);
    const int b = outs[i];
    for (int c = 0; c < colors_; ++c) {
      int cls = c * 2 + bundles_[b].side();
      if (!allowed(b, cls)) continue;
      bool clash = false;
      for (size_t j = 0; j < i; ++j) clash = clash || cls_[outs[j]] == cls;
      if (clash) continue;
      cls_[b] = cls;
      if (choose(pos, outs, i + 1)) return true;
      if (nodes_ > budget_) break;
    }
    cls_[b] = -1;
    return false;
  }

  const std::vector<Bundle>& bundles_;
  const std::vector<std::vector<int>>& out_of_;
  const std::vector<Vertex>& order_;
  int colors_;
  uint64_t budget_;
  uint64_t nodes_ = 0;
  std::vector<int> cls_;
};

}  // namespace

std::vector<StarForest> star_forests(const OrderedGraph& g, const std::vector<EdgeId>& page, PageKind kind) {
  require_page(g, page, kind);
  if (page.empty()) return {};
  const int n = g.num_vertices();

  std::map<Edge, std::vector<EdgeId>> simple;
  for (EdgeId e : page) simple[g.edge(e)].push_back(e);
  std::vector<std::set<Vertex>> nbr(n);
  for (auto& [uv, ids] : simple) {
    nbr[uv.u].insert(uv.v);
    nbr[uv.v].insert(uv.u);
  }

  // Elimination: always the leftmost vertex of degree <= 2, else the
  // leftmost of minimum degree.
  std::vector<Bundle> bundles;
  std::vector<std::vector<int>> out_of(n);
  std::vector<Vertex> order;
  std::set<std::pair<int, Vertex>> queue;  // (max(deg, 2), vertex)
  std::vector<int> deg(n);
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = static_cast<int>(nbr[v].size());
    if (deg[v] > 0) queue.insert({std::max(deg[v], 2), v});
  }
  while (!queue.empty()) {
    auto [key, x] = *queue.begin();
    queue.erase(queue.begin());
    order.push_back(x);
    for (Vertex y : nbr[x]) {
      Edge uv{std::min(x, y), std::max(x, y)};
      out_of[x].push_back(static_cast<int>(bundles.size()));
      bundles.push_back({x, y, simple[uv]});
      queue.erase({std::max(deg[y], 2), y});
      nbr[y].erase(x);
      --deg[y];
      if (deg[y] > 0) queue.insert({std::max(deg[y], 2), y});
    }
    nbr[x].clear();
  }
  std::reverse(order.begin(), order.end());

  std::vector<int> cls;
  for (int colors = 3;; ++colors) {
    ForestColoring coloring(bundles, out_of, order, colors, colors == 3 ? 200'000 : UINT64_MAX);
    if (coloring.run()) {
      cls = coloring.classes();
      break;
    }
  }

  std::map<int, std::map<Vertex, std::vector<EdgeId>>> by_class;
  for (size_t b = 0; b < bundles.size(); ++b) {
    auto& star = by_class[cls[b]][bundles[b].center];
    star.insert(star.end(), bundles[b].edges.begin(), bundles[b].edges.end());
  }
  std::vector<StarForest> out;
  for (auto& [c, stars] : by_class) {
    StarForest f;
    f.center_right = c % 2 == 0;
    for (auto& [center, edges] : stars) {
      std::sort(edges.begin(), edges.end());
      f.stars.push_back({center, edges});
    }
    out.push_back(std::move(f));
  }
  return out;
}

bool check_star_forests(const OrderedGraph& g, const std::vector<EdgeId>& page,
                        const std::vector<StarForest>& forests) {
  std::multiset<EdgeId> seen;
  for (const auto& f : forests) {
    std::set<Vertex> centers, leaves;
    for (const auto& s : f.stars) {
      if (!centers.insert(s.center).second) return false;
      std::set<Vertex> own;
      for (EdgeId e : s.edges) {
        if (e < 0 || e >= g.num_edges()) return false;
        seen.insert(e);
        const Edge& uv = g.edge(e);
        if (uv.u != s.center && uv.v != s.center) return false;
        Vertex leaf = uv.u == s.center ? uv.v : uv.u;
        if ((s.center > leaf) != f.center_right) return false;
        own.insert(leaf);
      }
      for (Vertex leaf : own)
        if (!leaves.insert(leaf).second) return false;
    }
    for (Vertex c : centers)
      if (leaves.count(c)) return false;
  }
  return seen == std::multiset<EdgeId>(page.begin(), page.end());
}

namespace {

std::vector<std::vector<EdgeId>> pages_of(const PageAssignment& a, const std::vector<EdgeId>& ids, PageKind kind) {
  std::vector<std::vector<EdgeId>> out;
  std::vector<int> slot(a.spec.size(), -1);
  for (size_t i = 0; i < ids.size(); ++i) {
    int p = a.page_of[i];
    if (a.spec.kinds[p] != kind) continue;
    if (slot[p] < 0) {
      slot[p] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[p]].push_back(ids[i]);
  }
  return out;
}

std::vector<std::vector<EdgeId>> first_fit_stacks(const OrderedGraph& g, std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end(), [&](EdgeId a, EdgeId b) {
    const Edge& x = g.edge(a);
    const Edge& y = g.edge(b);
    return x.u != y.u ? x.u < y.u : x.v > y.v;
  });
  std::vector<std::vector<EdgeId>> pages;
  for (EdgeId e : edges) {
    bool placed = false;
    for (auto& page : pages) {
      bool ok = true;
      for (EdgeId f : page) ok = ok && !crosses(g.edge(e), g.edge(f));
      if (ok) {
        page.push_back(e);
        placed = true;
        break;
      }
    }
    if (!placed) pages.push_back({e});
  }
  return pages;
}

std::vector<std::vector<EdgeId>> queue_cover(const OrderedGraph& g, const std::vector<EdgeId>& edges) {
  if (edges.empty()) return {};
  auto sub = g.edge_subgraph(edges);
  std::vector<EdgeId> ids = edges;
  std::sort(ids.begin(), ids.end());
  return pages_of(rainbow_depth_layout(sub), ids, PageKind::Queue);
}

// Layout of a small graph: exact when the solver finishes, else first-fit
// stacks.
PageAssignment small_layout(const OrderedGraph& sub, uint64_t budget) {
  try {
    return mixed_page_number(sub, budget).assignment;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
  }
  std::vector<EdgeId> all(sub.num_edges());
  for (EdgeId e = 0; e < sub.num_edges(); ++e) all[e] = e;
  auto pages = first_fit_stacks(sub, all);
  PageAssignment a;
  a.page_of.assign(sub.num_edges(), 0);
  for (size_t p = 0; p < pages.size(); ++p) {
    a.spec.kinds.push_back(PageKind::Stack);
    for (EdgeId e : pages[p]) a.page_of[e] = static_cast<int>(p);
  }
  return a;
}

// Separated sub-layout of one star: the Ferrers construction for
// matchings, otherwise small_layout.
PageAssignment star_layout(const OrderedGraph& sub, uint64_t budget) {
  if (sub.is_matching()) {
    auto canon = canonicalize_pattern(sub);
    if (is_separated(canon)) return approx_mixed_layout(to_grid(canon));
  }
  return small_layout(sub, budget);
}

}  // namespace

std::vector<std::vector<EdgeId>> stack_cover(const OrderedGraph& g, const std::vector<EdgeId>& edges,
                                             uint64_t budget) {
  if (edges.empty()) return {};
  std::vector<EdgeId> ids = edges;
  std::sort(ids.begin(), ids.end());
  auto sub = g.edge_subgraph(ids);
  try {
    return pages_of(stack_number(sub, budget).assignment, ids, PageKind::Stack);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
  }
  return first_fit_stacks(g, ids);
}

std::string TransferReport::to_json() const {
  nlohmann::ordered_json j;
  j["pages_used"] = pages_used;
  j["ell"] = ell;
  j["ell_stacks"] = ell_stacks;
  j["ell_queues"] = ell_queues;
  j["m_intra"] = m_intra;
  j["intra_pages"] = intra_pages;
  j["max_forests"] = max_forests;
  j["alpha_max"] = alpha_max;
  j["max_cover_L"] = max_cover_L;
  j["max_queues_rest"] = max_queues_rest;
  j["max_queues_B"] = max_queues_B;
  j["max_cover_rest"] = max_cover_rest;
  j["bound"] = bound;
  j["bound_stack_branch"] = bound_stack_branch;
  j["bound_queue_branch"] = bound_queue_branch;
  j["within_bound"] = within_bound;
  return j.dump();
}

TransferResult transfer_layout(const OrderedGraph& g, const IntervalPartition& parts, const PageAssignment& layout_h,
                               int k, uint64_t budget) {
  if (k < 1) throw Error(ErrorCode::BadParams, "k must be >= 1");
  Quotient q = quotient_graph(g, parts);
  const OrderedGraph& h = q.graph;
  if (static_cast<int>(layout_h.page_of.size()) != h.num_edges())
    throw Error(ErrorCode::InvalidInput, "quotient layout does not cover the quotient edges");
  for (int p : layout_h.page_of)
    if (p < 0 || p >= layout_h.num_pages()) throw Error(ErrorCode::InvalidInput, "page index out of range");
  if (!is_valid_assignment(h, layout_h)) throw Error(ErrorCode::InvalidInput, "quotient layout is not valid");

  TransferReport rep;
  PageSpec spec;
  std::vector<int> page_of(g.num_edges(), -1);
  auto open = [&](PageKind kind) {
    spec.kinds.push_back(kind);
    return spec.size() - 1;
  };
  auto put = [&](const std::vector<EdgeId>& edges, int page) {
    for (EdgeId e : edges) page_of[e] = page;
  };

  // Intra-interval edges: blocks never overlap, so the j-th stack (queue)
  // of every block shares one page.
  std::vector<int> intra_stacks, intra_queues;
  for (int b = 0; b < parts.num_blocks(); ++b) {
    auto ids = block_edges(g, parts, b);
    if (ids.empty()) continue;
    auto a = small_layout(g.edge_subgraph(ids), budget).compacted();
    rep.m_intra = std::max(rep.m_intra, a.num_pages());
    for (PageKind kind : {PageKind::Stack, PageKind::Queue}) {
      auto pages = pages_of(a, ids, kind);
      auto& shared = kind == PageKind::Stack ? intra_stacks : intra_queues;
      for (size_t j = 0; j < pages.size(); ++j) {
        if (j == shared.size()) shared.push_back(open(kind));
        put(pages[j], shared[j]);
      }
    }
  }
  rep.intra_pages = static_cast<int>(intra_stacks.size() + intra_queues.size());

  auto compact_h = layout_h.compacted();
  std::vector<std::vector<EdgeId>> h_pages(compact_h.num_pages());
  for (EdgeId e = 0; e < h.num_edges(); ++e) h_pages[compact_h.page_of[e]].push_back(e);
  rep.ell = compact_h.num_pages();
  rep.ell_stacks = compact_h.spec.stacks();
  rep.ell_queues = compact_h.spec.queues();

  for (int p = 0; p < compact_h.num_pages(); ++p) {
    const PageKind kind = compact_h.spec.kinds[p];
    const PageKind other = kind == PageKind::Stack ? PageKind::Queue : PageKind::Stack;
    auto forests = star_forests(h, h_pages[p], kind);
    rep.max_forests = std::max(rep.max_forests, static_cast<int>(forests.size()));
    for (const auto& forest : forests) {
      // Pages of the kind matching the quotient page are shared by all
      // stars; the other kind is collected per index j.
      std::vector<int> shared;
      std::vector<std::vector<std::vector<EdgeId>>> per_index;  // [j][star] -> edges
      for (size_t s = 0; s < forest.stars.size(); ++s) {
        std::vector<EdgeId> lifted;
        for (EdgeId e : forest.stars[s].edges) lifted.push_back(q.lift[e]);
        std::sort(lifted.begin(), lifted.end());
        auto alpha = star_layout(g.edge_subgraph(lifted), budget).compacted();
        rep.alpha_max = std::max(rep.alpha_max, alpha.num_pages());
        auto same = pages_of(alpha, lifted, kind);
        for (size_t j = 0; j < same.size(); ++j) {
          if (j == shared.size()) shared.push_back(open(kind));
          put(same[j], shared[j]);
        }
        auto diff = pages_of(alpha, lifted, other);
        if (per_index.size() < diff.size()) per_index.resize(diff.size());
        for (size_t j = 0; j < diff.size(); ++j) per_index[j].push_back(std::move(diff[j]));
      }
      for (auto& groups : per_index) {
        std::vector<EdgeId> near, rest;
        for (auto& grp : groups) {
          if (kind == PageKind::Stack) {
            // Twists: keep the k edges farthest from the centers' side.
            std::sort(grp.begin(), grp.end(), [&](EdgeId a, EdgeId b) {
              return forest.center_right ? g.edge(a).u < g.edge(b).u : g.edge(a).v > g.edge(b).v;
            });
          } else {
            // Rainbows: keep the k innermost edges.
            std::sort(grp.begin(), grp.end(), [&](EdgeId a, EdgeId b) {
              const Edge& x = g.edge(a);
              const Edge& y = g.edge(b);
              return x.v - x.u != y.v - y.u ? x.v - x.u < y.v - y.u : a < b;
            });
          }
          for (size_t i = 0; i < grp.size(); ++i) (static_cast<int>(i) < k ? near : rest).push_back(grp[i]);
        }
        if (kind == PageKind::Stack) {
          auto cover = stack_cover(g, near, budget);
          auto queues = queue_cover(g, rest);
          rep.max_cover_L = std::max(rep.max_cover_L, static_cast<int>(cover.size()));
          rep.max_queues_rest = std::max(rep.max_queues_rest, static_cast<int>(queues.size()));
          for (auto& page : cover) put(page, open(PageKind::Stack));
          for (auto& page : queues) put(page, open(PageKind::Queue));
        } else {
          auto queues = queue_cover(g, near);
          auto cover = stack_cover(g, rest, budget);
          rep.max_queues_B = std::max(rep.max_queues_B, static_cast<int>(queues.size()));
          rep.max_cover_rest = std::max(rep.max_cover_rest, static_cast<int>(cover.size()));
          for (auto& page : queues) put(page, open(PageKind::Queue));
          for (auto& page : cover) put(page, open(PageKind::Stack));
        }
      }
    }
  }

  for (int p : page_of)
    if (p < 0) throw std::logic_error("transfer left an edge unassigned");
  PageAssignment out = PageAssignment{spec, page_of}.compacted();
  if (!is_valid_assignment(g, out)) throw std::logic_error("transfer produced an invalid layout");

  rep.pages_used = out.num_pages();
  const double kk = k;
  const double alpha = 2 * std::pow(kk, 7);
  const double big = 14 * (kk + 1) * std::log2(kk + 1);
  const double small = 14 * kk * std::log2(kk);
  rep.bound = 6 * rep.ell * alpha * (1 + big + kk) + 2 * rep.m_intra;
  rep.bound_stack_branch = 6 * rep.ell_stacks * alpha * (1 + small + kk) + 6 * rep.ell_queues * alpha * (1 + big + kk) +
                           2 * rep.m_intra;
  rep.bound_queue_branch = rep.bound;
  rep.within_bound = rep.pages_used <= rep.bound;
  return {std::move(out), rep};
}

namespace {

// Lifts an edge of levels[i] down to levels[0].
EdgeId lift_to_base(const std::vector<Quotient>& quotients, int level, EdgeId e) {
  for (int i = level; i > 0; --i) e = quotients[i - 1].lift[e];
  return e;
}

// First k edges (by left endpoint) of some (k+1)-twist among `ids`.
std::vector<EdgeId> twist_among(const OrderedGraph& g, std::vector<EdgeId> ids, int k, uint64_t budget) {
  std::sort(ids.begin(), ids.end());
  auto sub = g.edge_subgraph(ids);
  auto tw = largest_twist(sub, budget);
  if (tw.k < k + 1) throw std::logic_error("expected a (k+1)-twist");
  std::vector<EdgeId> out;
  for (EdgeId e : tw.edges) out.push_back(ids[e]);
  std::sort(out.begin(), out.end());  // edge ids follow left endpoints
  out.resize(k + 1);
  return out;
}

}  // namespace

IteratedLayout iterated_quotient_layout(const OrderedGraph& g, int k, uint64_t budget, PatternWitness* witness) {
  if (k < 1) throw Error(ErrorCode::BadParams, "k must be >= 1");
  std::vector<OrderedGraph> levels{g};
  std::vector<IntervalPartition> parts;
  std::vector<Quotient> quotients;
  while (largest_twist(levels.back()).k > k) {
    if (static_cast<int>(levels.size()) == k) {
      if (witness) {
        // Descend from a twist of H_k into the block under its last left
        // endpoint; every level contributes k twisted edges nested above
        // the next level's twist.
        std::vector<std::vector<EdgeId>> groups;
        int level = k - 1;
        std::vector<EdgeId> all(levels[level].num_edges());
        for (EdgeId e = 0; e < levels[level].num_edges(); ++e) all[e] = e;
        auto tw = twist_among(levels[level], all, k, budget);
        while (true) {
          std::vector<EdgeId> grp;
          for (int i = 0; i < k; ++i) grp.push_back(lift_to_base(quotients, level, tw[i]));
          groups.push_back(std::move(grp));
          if (level == 0) break;
          const Vertex under = levels[level].edge(tw[k]).u;
          --level;
          tw = twist_among(levels[level], block_edges(levels[level], parts[level], under), k, budget);
        }
        *witness = make_witness(PatternKind::ThickRainbow, k, std::move(groups));
      }
      throw Error(ErrorCode::DepthExceeded,
                  "still a " + std::to_string(k + 1) + "-twist after " + std::to_string(k) + " levels");
    }
    parts.push_back(interval_partition_by_twists(levels.back(), k, budget));
    quotients.push_back(quotient_graph(levels.back(), parts.back()));
    levels.push_back(quotients.back().graph);
  }

  IteratedLayout out;
  const OrderedGraph& top = levels.back();
  std::vector<EdgeId> all(top.num_edges());
  for (EdgeId e = 0; e < top.num_edges(); ++e) all[e] = e;
  PageAssignment layout;
  layout.page_of.assign(top.num_edges(), 0);
  auto cover = stack_cover(top, all, budget);
  for (size_t p = 0; p < cover.size(); ++p) {
    layout.spec.kinds.push_back(PageKind::Stack);
    for (EdgeId e : cover[p]) layout.page_of[e] = static_cast<int>(p);
  }
  out.top_pages = layout.num_pages();
  std::vector<QuotientLevel> reports(parts.size());
  for (int i = static_cast<int>(parts.size()) - 1; i >= 0; --i) {
    auto res = transfer_layout(levels[i], parts[i], layout, k, budget);
    layout = std::move(res.assignment);
    reports[i] = {parts[i], res.report};
  }
  out.assignment = std::move(layout);
  out.levels = std::move(reports);
  return out;
}

std::vector<std::vector<EdgeId>> edge_color(const OrderedGraph& g) {
  const int n = g.num_vertices();
  const int m = g.num_edges();
  const int palette = g.max_degree() + 1;
  std::vector<int> color(m, -1);

  if (g.multi()) {
    std::vector<std::set<int>> used(n);
    for (EdgeId e = 0; e < m; ++e) {
      const Edge& uv = g.edge(e);
      int c = 0;
      while (used[uv.u].count(c) || used[uv.v].count(c)) ++c;
      color[e] = c;
      used[uv.u].insert(c);
      used[uv.v].insert(c);
    }
  } else {
    // at[v][c] = edge of color c at v, or -1.
    std::vector<std::vector<EdgeId>> at(n, std::vector<EdgeId>(palette, -1));
    std::map<Edge, EdgeId> id_of;
    for (EdgeId e = 0; e < m; ++e) id_of[g.edge(e)] = e;
    auto edge_id = [&](Vertex a, Vertex b) { return id_of.at({std::min(a, b), std::max(a, b)}); };
    auto free_at = [&](Vertex v) {
      for (int c = 0; c < palette; ++c)
        if (at[v][c] < 0) return c;
      throw std::logic_error("no free color");
    };
    auto other = [&](EdgeId e, Vertex v) { return g.edge(e).u == v ? g.edge(e).v : g.edge(e).u; };
    auto paint = [&](EdgeId e, int c) {
      const Edge& uv = g.edge(e);
      if (color[e] >= 0) {
        at[uv.u][color[e]] = -1;
        at[uv.v][color[e]] = -1;
      }
      color[e] = c;
      if (c >= 0) {
        at[uv.u][c] = e;
        at[uv.v][c] = e;
      }
    };
    std::vector<std::vector<Vertex>> nbrs(n);
    for (const auto& uv : g.edges()) {
      nbrs[uv.u].push_back(uv.v);
      nbrs[uv.v].push_back(uv.u);
    }

    for (EdgeId e0 = 0; e0 < m; ++e0) {
      const Vertex u = g.edge(e0).u;
      // Maximal fan at u starting with the uncolored edge.
      std::vector<Vertex> fan{g.edge(e0).v};
      std::vector<char> in_fan(n, 0);
      in_fan[fan[0]] = 1;
      bool grew = true;
      while (grew) {
        grew = false;
        for (Vertex w : nbrs[u]) {
          if (in_fan[w]) continue;
          EdgeId uw = edge_id(u, w);
          if (color[uw] >= 0 && at[fan.back()][color[uw]] < 0) {
            fan.push_back(w);
            in_fan[w] = 1;
            grew = true;
            break;
          }
        }
      }
      const int c = free_at(u);
      const int d = free_at(fan.back());
      // Invert the cd-path from u.
      if (at[u][d] >= 0) {
        std::vector<EdgeId> path;
        Vertex x = u;
        int want = d;
        while (at[x][want] >= 0) {
          EdgeId pe = at[x][want];
          path.push_back(pe);
          x = other(pe, x);
          want = want == d ? c : d;
        }
        std::vector<int> old;
        for (EdgeId pe : path) old.push_back(color[pe]);
        for (EdgeId pe : path) paint(pe, -1);
        for (size_t i = 0; i < path.size(); ++i) paint(path[i], old[i] == d ? c : d);
      }
      // First fan vertex with d free whose prefix is still a fan.
      size_t w = 0;
      bool found = false;
      for (; w < fan.size(); ++w) {
        if (w > 0) {
          EdgeId uw = edge_id(u, fan[w]);
          if (color[uw] < 0 || at[fan[w - 1]][color[uw]] >= 0) break;
        }
        if (at[fan[w]][d] < 0) {
          found = true;
          break;
        }
      }
      if (!found) throw std::logic_error("Misra-Gries fan rotation failed");
      // Rotate the prefix: each edge takes the next edge's color.
      for (size_t i = 0; i < w; ++i) {
        EdgeId cur = edge_id(u, fan[i]);
        EdgeId nxt = edge_id(u, fan[i + 1]);
        int cn = color[nxt];
        paint(nxt, -1);
        paint(cur, cn);
      }
      paint(edge_id(u, fan[w]), d);
    }
  }

  int used = 0;
  for (int c : color) used = std::max(used, c + 1);
  std::vector<std::vector<EdgeId>> out(used);
  for (EdgeId e = 0; e < m; ++e) out[color[e]].push_back(e);
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& v) { return v.empty(); }), out.end());
  return out;
}

PageAssignment bounded_degree_layout(const OrderedGraph& g, int k, uint64_t budget) {
  PageAssignment out;
  out.page_of.assign(g.num_edges(), -1);
  for (const auto& matching : edge_color(g)) {
    auto sub = g.edge_subgraph(matching);
    auto layout = iterated_quotient_layout(sub, k, budget).assignment;
    const int offset = out.spec.size();
    out.spec.kinds.insert(out.spec.kinds.end(), layout.spec.kinds.begin(), layout.spec.kinds.end());
    for (size_t i = 0; i < matching.size(); ++i) out.page_of[matching[i]] = offset + layout.page_of[i];
  }
  return out;
}

}  // namespace mixedlayout
