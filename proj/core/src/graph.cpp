#include "mixedlayout/graph.hpp"

#include <algorithm>

#include "mixedlayout/error.hpp"

namespace mixedlayout {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::BadEdgeId: return "BadEdgeId";
    case ErrorCode::CoverageMismatch: return "CoverageMismatch";
    case ErrorCode::NotSeparated: return "NotSeparated";
    case ErrorCode::NotMatching: return "NotMatching";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::InsufficientInput: return "InsufficientInput";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::RealizationNotFound: return "RealizationNotFound";
    case ErrorCode::InvalidPage: return "InvalidPage";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
  }
  return "Unknown";
}

OrderedGraph build_graph(int n, std::vector<Edge> edges, bool multi) {
  if (n < 0) throw Error(ErrorCode::OutOfRange, "negative vertex count");
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw Error(ErrorCode::OutOfRange,
                  "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") outside 0.." +
                      std::to_string(n - 1));
    if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "loop at " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (!multi) {
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end())
      throw Error(ErrorCode::DuplicateEdge,
                  "(" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");
  }
  OrderedGraph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.multi_ = multi;
  return g;
}

int OrderedGraph::degree(Vertex x) const {
  int d = 0;
  for (const auto& e : edges_) d += (e.u == x) + (e.v == x);
  return d;
}

int OrderedGraph::max_degree() const {
  std::vector<int> deg(n_, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

bool OrderedGraph::is_matching() const { return max_degree() <= 1; }

OrderedGraph OrderedGraph::without_edge(EdgeId e) const {
  if (e < 0 || e >= num_edges()) throw Error(ErrorCode::BadEdgeId, std::to_string(e));
  OrderedGraph g = *this;
  g.edges_.erase(g.edges_.begin() + e);
  return g;
}

OrderedGraph OrderedGraph::edge_subgraph(std::span<const EdgeId> ids) const {
  std::vector<EdgeId> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  OrderedGraph g;
  g.n_ = n_;
  g.multi_ = multi_;
  for (EdgeId e : sorted) {
    if (e < 0 || e >= num_edges()) throw Error(ErrorCode::BadEdgeId, std::to_string(e));
    g.edges_.push_back(edges_[e]);
  }
  return g;
}

Relation relation(const Edge& a, const Edge& b) {
  if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) return Relation::SharedEndpoint;
  if ((a.u < b.u && b.u < a.v && a.v < b.v) || (b.u < a.u && a.u < b.v && b.v < a.v))
    return Relation::Cross;
  if ((a.u < b.u && b.v < a.v) || (b.u < a.u && a.v < b.v)) return Relation::Nest;
  return Relation::Disjoint;
}

EdgeRelation classify_pair(const OrderedGraph& g, EdgeId e1, EdgeId e2) {
  if (e1 < 0 || e1 >= g.num_edges() || e2 < 0 || e2 >= g.num_edges() || e1 == e2)
    throw Error(ErrorCode::BadEdgeId, std::to_string(e1) + "," + std::to_string(e2));
  const Edge& a = g.edge(e1);
  const Edge& b = g.edge(e2);
  EdgeRelation r;
  r.kind = relation(a, b);
  if (r.kind == Relation::Nest) {
    bool a_outer = a.u < b.u;
    r.outer = a_outer ? e1 : e2;
    r.inner = a_outer ? e2 : e1;
  }
  return r;
}

ConflictTable::ConflictTable(const OrderedGraph& g) {
  const int m = g.num_edges();
  cross.assign(m, DynBitset(m));
  nest.assign(m, DynBitset(m));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      switch (relation(g.edge(i), g.edge(j))) {
        case Relation::Cross:
          cross[i].set(j);
          cross[j].set(i);
          break;
        case Relation::Nest:
          nest[i].set(j);
          nest[j].set(i);
          break;
        default: break;
      }
    }
}

PageSpec PageSpec::split(int stacks, int queues) {
  if (stacks < 0 || queues < 0) throw Error(ErrorCode::BadParams, "negative page count");
  PageSpec s;
  s.kinds.assign(stacks, PageKind::Stack);
  s.kinds.insert(s.kinds.end(), queues, PageKind::Queue);
  return s;
}

PageSpec PageSpec::parse(std::string_view letters) {
  PageSpec s;
  for (char c : letters) {
    if (c == 'S' || c == 's')
      s.kinds.push_back(PageKind::Stack);
    else if (c == 'Q' || c == 'q')
      s.kinds.push_back(PageKind::Queue);
    else
      throw Error(ErrorCode::InvalidInput, "page kind must be S or Q, got '" + std::string(1, c) + "'");
  }
  return s;
}

int PageSpec::stacks() const {
  return static_cast<int>(std::count(kinds.begin(), kinds.end(), PageKind::Stack));
}
int PageSpec::queues() const { return size() - stacks(); }

std::string PageSpec::str() const {
  std::string out;
  for (auto k : kinds) out += k == PageKind::Stack ? 'S' : 'Q';
  return out;
}

PageAssignment PageAssignment::compacted() const {
  std::vector<int> used(spec.size(), 0);
  for (int p : page_of) used.at(p) = 1;
  std::vector<int> remap(spec.size(), -1);
  PageAssignment out;
  for (int p = 0; p < spec.size(); ++p)
    if (used[p]) {
      remap[p] = out.spec.size();
      out.spec.kinds.push_back(spec.kinds[p]);
    }
  out.page_of.reserve(page_of.size());
  for (int p : page_of) out.page_of.push_back(remap[p]);
  return out;
}

std::vector<Violation> validate_assignment(const OrderedGraph& g, const PageAssignment& a) {
  if (static_cast<int>(a.page_of.size()) != g.num_edges())
    throw Error(ErrorCode::CoverageMismatch, std::to_string(a.page_of.size()) + " pages for " +
                                                 std::to_string(g.num_edges()) + " edges");
  for (int p : a.page_of)
    if (p < 0 || p >= a.spec.size())
      throw Error(ErrorCode::CoverageMismatch, "page index " + std::to_string(p) + " out of range");

  std::vector<Violation> out;
  const int m = g.num_edges();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      if (a.page_of[i] != a.page_of[j]) continue;
      const int p = a.page_of[i];
      Relation r = relation(g.edge(i), g.edge(j));
      bool bad = a.spec.kinds[p] == PageKind::Stack ? r == Relation::Cross : r == Relation::Nest;
      if (bad) out.push_back({i, j, p});
    }
  return out;
}

bool is_valid_assignment(const OrderedGraph& g, const PageAssignment& a) {
  return validate_assignment(g, a).empty();
}

GridMatching::GridMatching(std::vector<int> pi) : pi_(std::move(pi)) {
  std::vector<char> seen(pi_.size() + 1, 0);
  for (int r : pi_) {
    if (r < 1 || r > size() || seen[r])
      throw Error(ErrorCode::InvalidInput, "not a permutation of 1.." + std::to_string(size()));
    seen[r] = 1;
  }
}

OrderedGraph GridMatching::to_graph() const {
  const int m = size();
  std::vector<Edge> edges;
  edges.reserve(m);
  for (int c = 0; c < m; ++c) edges.push_back({c, m + pi_[c] - 1});
  return build_graph(2 * m, std::move(edges));
}

int separation_cut(const OrderedGraph& g) {
  if (g.num_edges() == 0) return 0;
  int max_left = -1;
  int min_right = g.num_vertices();
  for (const auto& e : g.edges()) {
    max_left = std::max(max_left, e.u);
    min_right = std::min(min_right, e.v);
  }
  if (max_left >= min_right) throw Error(ErrorCode::NotSeparated, "left and right endpoints interleave");
  return max_left + 1;
}

bool is_separated(const OrderedGraph& g) {
  try {
    separation_cut(g);
    return true;
  } catch (const Error&) {
    return false;
  }
}

GridMatching to_grid(const OrderedGraph& g) {
  if (!g.is_matching()) throw Error(ErrorCode::NotMatching, "a vertex has degree > 1");
  separation_cut(g);
  const int m = g.num_edges();
  // Edges are sorted by left endpoint; rank the right endpoints.
  std::vector<int> rights;
  for (const auto& e : g.edges()) rights.push_back(e.v);
  std::vector<int> sorted = rights;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> pi(m);
  for (int c = 0; c < m; ++c)
    pi[c] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), rights[c]) - sorted.begin()) + 1;
  return GridMatching(std::move(pi));
}

OrderedGraph canonicalize_pattern(const OrderedGraph& g) {
  std::vector<int> idx(g.num_vertices(), -1);
  for (const auto& e : g.edges()) idx[e.u] = idx[e.v] = 0;
  int next = 0;
  for (auto& i : idx)
    if (i == 0) i = next++;
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({idx[e.u], idx[e.v]});
  return build_graph(next, std::move(edges), g.multi());
}

}  // namespace mixedlayout
