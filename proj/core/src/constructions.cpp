#include "mixedlayout/constructions.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "mixedlayout/error.hpp"
#include "mixedlayout/greene.hpp"

namespace mixedlayout {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::BadParams, what);
}

}  // namespace

GridMatching gen_thick_twist(int t, int k) {
  require(t >= 1 && k >= 1, "thick twist needs t, k >= 1");
  std::vector<int> pi;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < t; ++j) pi.push_back(i * t + (t - j));
  return GridMatching(std::move(pi));
}

GridMatching gen_thick_rainbow(int t, int k) {
  require(t >= 1 && k >= 1, "thick rainbow needs t, k >= 1");
  std::vector<int> pi;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < t; ++j) pi.push_back((k - 1 - i) * t + j + 1);
  return GridMatching(std::move(pi));
}

GridMatching gen_diamond(int k) {
  require(k >= 1, "diamond needs k >= 1");
  return gen_thick_rainbow(k, k);
}

GridMatching gen_pattern(PatternKind kind, int k, int t) {
  switch (kind) {
    case PatternKind::Twist: return gen_thick_twist(1, k);
    case PatternKind::Rainbow: return gen_thick_rainbow(1, k);
    case PatternKind::Diamond: return gen_diamond(k);
    case PatternKind::ThickTwist: return gen_thick_twist(t, k);
    case PatternKind::ThickRainbow: return gen_thick_rainbow(t, k);
  }
  throw Error(ErrorCode::BadParams, "unknown pattern kind");
}

GridMatching gen_tight_2k(int k) {
  require(k >= 1, "tight construction needs k >= 1");
  const int rainbow_len = k * (k - 1) + 1;
  const int twist_len = k * k + 1;
  const int blue = k * rainbow_len;
  const int m = blue + k * twist_len;
  const int low = m - blue;
  std::vector<int> pi(m);
  for (int gi = 0; gi < rainbow_len; ++gi)
    for (int j = 0; j < k; ++j) pi[gi * k + j] = low + (rainbow_len - 1 - gi) * k + j + 1;
  for (int gi = 0; gi < twist_len; ++gi)
    for (int j = 0; j < k; ++j) pi[blue + gi * k + j] = gi * k + (k - 1 - j) + 1;
  GridMatching out(std::move(pi));

  auto fd = ferrers(out);
  if (fd.w != twist_len || fd.h != twist_len || fd.square != k)
    throw std::logic_error("tight construction lost its shape invariants");
  return out;
}

namespace {

std::vector<int> alternating(int level, int depth) {
  if (level > depth) return {1};
  auto sub = alternating(level + 1, depth);
  const int size = static_cast<int>(sub.size());
  std::vector<int> out;
  auto shifted = sub;
  for (auto& v : shifted) v += size;
  if (level % 2 == 1) {
    out = sub;
    out.insert(out.end(), shifted.begin(), shifted.end());
  } else {
    out = shifted;
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

}  // namespace

GridMatching gen_alternating_subdivision(int k) {
  require(k >= 1 && (k & (k - 1)) == 0, "k must be a power of two");
  const int h = 4 * std::countr_zero(static_cast<unsigned>(k));
  require(h <= 24, "k too large");
  return GridMatching(alternating(1, h));
}

namespace {

// Builds the endpoint word left to right. At each step either an unopened
// label opens or an open label closes; closing checks that the arc's
// crossing set equals its target neighbourhood exactly.
class ArcRealizer {
 public:
  ArcRealizer(std::vector<std::vector<char>> adj, uint64_t budget)
      : adj_(std::move(adj)), n_(static_cast<int>(adj_.size())), budget_(budget),
        open_at_(n_, -1), close_at_(n_, -1) {}

  bool run() { return step(0); }

  // Edge (open position, close position) per label.
  std::vector<Edge> arcs() const {
    std::vector<Edge> out;
    for (int a = 0; a < n_; ++a) out.push_back({open_at_[a], close_at_[a]});
    return out;
  }

 private:
  bool crossing_set_matches(int a, int now) const {
    for (int b = 0; b < n_; ++b) {
      if (b == a || open_at_[b] < 0) {
        if (b != a && adj_[a][b]) return false;  // a neighbour that never overlaps
        continue;
      }
      bool cross;
      if (open_at_[b] > open_at_[a])
        cross = close_at_[b] < 0;  // opened inside a, still open
      else
        cross = close_at_[b] > open_at_[a] && close_at_[b] < now;
      if (cross != static_cast<bool>(adj_[a][b])) return false;
    }
    return true;
  }

  bool step(int pos) {
    if (pos == 2 * n_) return true;
    if (++nodes_ > budget_) throw Error(ErrorCode::RealizationNotFound, "arc search exceeded budget");
    // Close an open arc.
    for (int a = 0; a < n_; ++a) {
      if (open_at_[a] < 0 || close_at_[a] >= 0) continue;
      if (!crossing_set_matches(a, pos)) continue;
      close_at_[a] = pos;
      if (step(pos + 1)) return true;
      close_at_[a] = -1;
    }
    // Open a new label; label 0 always goes first.
    for (int c = 0; c < n_; ++c) {
      if (open_at_[c] >= 0) continue;
      if (pos == 0 && c != 0) break;
      bool ok = true;
      for (int b = 0; b < n_ && ok; ++b)
        if (close_at_[b] >= 0 && adj_[c][b]) ok = false;
      if (!ok) continue;
      open_at_[c] = pos;
      if (step(pos + 1)) return true;
      open_at_[c] = -1;
    }
    return false;
  }

  std::vector<std::vector<char>> adj_;
  int n_;
  uint64_t budget_;
  uint64_t nodes_ = 0;
  std::vector<int> open_at_;
  std::vector<int> close_at_;
};

}  // namespace

OrderedGraph gen_stack_critical(int s, int n, std::vector<int>* labels, uint64_t budget) {
  require(s >= 2, "s must be >= 2");
  if (s == 2)
    require(n >= 3 && n % 2 == 1, "s = 2 needs an odd cycle length n >= 3");
  else
    require(n > s && (n - 1) % s == 0, "s >= 3 needs n = rs + 1 with r >= 1");

  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int d = std::abs(i - j);
      d = std::min(d, n - d);
      adj[i][j] = d >= 1 && d <= s - 1;
    }
  ArcRealizer search(adj, budget);
  if (!search.run()) throw Error(ErrorCode::RealizationNotFound, "no arc realization exists");
  auto arcs = search.arcs();
  auto g = build_graph(2 * n, arcs);

  // Map edge ids back to circulant labels and re-check the crossing graph.
  std::vector<int> label_of(n);
  for (int a = 0; a < n; ++a) {
    auto it = std::lower_bound(g.edges().begin(), g.edges().end(), Edge{std::min(arcs[a].u, arcs[a].v), std::max(arcs[a].u, arcs[a].v)});
    label_of[it - g.edges().begin()] = a;
  }
  ConflictTable table(g);
  for (int e = 0; e < n; ++e)
    for (int f = 0; f < n; ++f)
      if (e != f && table.cross[e].test(f) != static_cast<bool>(adj[label_of[e]][label_of[f]]))
        throw std::logic_error("arc realization does not match the circulant");
  if (labels) *labels = label_of;
  return g;
}

OrderedGraph gen_2critical(int r) {
  require(r >= 2 && r % 2 == 0, "r must be even and >= 2");
  const int n = 2 * (r + 2) + 6;
  std::vector<Edge> edges;
  for (int i = 0; i < r - 1; ++i) edges.push_back({2 * i, 2 * i + 3});
  edges.push_back({2 * r - 2, 2 * r + 3});
  edges.push_back({1, 2 * r + 1});
  edges.push_back({2 * r, 2 * r + 2});
  edges.push_back({n - 6, n - 1});
  edges.push_back({n - 5, n - 2});
  edges.push_back({n - 4, n - 3});
  return build_graph(n, std::move(edges));
}

OrderedGraph wrap_in_twist(const OrderedGraph& g, int t) {
  require(t >= 1, "twist size must be >= 1");
  const int n = g.num_vertices();
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({e.u + t, e.v + t});
  for (int i = 0; i < t; ++i) edges.push_back({i, t + n + i});
  return build_graph(n + 2 * t, std::move(edges), g.multi());
}

OrderedGraph gen_k_critical(int k, int n) {
  require(k >= 2, "k must be >= 2");
  require(n >= 14 && (n - 6) % 2 == 0, "n must be 2(r+2)+6 for even r >= 2");
  const int r = (n - 6) / 2 - 2;
  OrderedGraph g = gen_2critical(r);
  for (int j = 2; j < k; ++j) g = wrap_in_twist(g, j + 2);
  return g;
}

OrderedGraph gen_sq_critical(int s, int q, int n) {
  require(q >= 0, "q must be >= 0");
  OrderedGraph g = gen_stack_critical(s, n);
  for (int i = 0; i < q; ++i) g = wrap_in_twist(g, s + 1);
  return g;
}

OrderedGraph gen_random_matching(int m, uint64_t seed) {
  require(m >= 0, "m must be >= 0");
  std::mt19937_64 rng(seed);
  std::vector<int> pts(2 * m);
  std::iota(pts.begin(), pts.end(), 0);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) edges.push_back({pts[2 * i], pts[2 * i + 1]});
  return build_graph(2 * m, std::move(edges));
}

OrderedGraph gen_random_graph(int n, int m, uint64_t seed) {
  require(n >= 0 && m >= 0 && static_cast<long long>(m) * 2 <= static_cast<long long>(n) * (n - 1),
          "too many edges for n vertices");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, std::max(0, n - 1));
  std::set<Edge> chosen;
  while (static_cast<int>(chosen.size()) < m) {
    int u = pick(rng);
    int v = pick(rng);
    if (u == v) continue;
    chosen.insert({std::min(u, v), std::max(u, v)});
  }
  return build_graph(n, {chosen.begin(), chosen.end()});
}

}  // namespace mixedlayout
