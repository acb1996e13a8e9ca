#include "mixedlayout/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <set>

#include "mixedlayout/clique.hpp"
#include "mixedlayout/error.hpp"
#include "mixedlayout/greene.hpp"
#include "diamond_search.hpp"

namespace mixedlayout {

std::string_view to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::Twist: return "Twist";
    case PatternKind::Rainbow: return "Rainbow";
    case PatternKind::Diamond: return "Diamond";
    case PatternKind::ThickTwist: return "ThickTwist";
    case PatternKind::ThickRainbow: return "ThickRainbow";
  }
  return "Unknown";
}

PatternWitness make_witness(PatternKind kind, int t, std::vector<std::vector<EdgeId>> groups) {
  PatternWitness w;
  w.kind = kind;
  w.t = t;
  w.k = static_cast<int>(groups.size());
  for (const auto& g : groups) w.edges.insert(w.edges.end(), g.begin(), g.end());
  std::sort(w.edges.begin(), w.edges.end());
  w.groups = std::move(groups);
  return w;
}

namespace {

bool crosses(const OrderedGraph& g, EdgeId a, EdgeId b) { return relation(g.edge(a), g.edge(b)) == Relation::Cross; }
bool nests(const OrderedGraph& g, EdgeId a, EdgeId b) { return relation(g.edge(a), g.edge(b)) == Relation::Nest; }

// a then b, crossing with a starting first.
bool rises(const OrderedGraph& g, EdgeId a, EdgeId b) { return crosses(g, a, b) && g.edge(a).u < g.edge(b).u; }
// b strictly inside a.
bool falls(const OrderedGraph& g, EdgeId a, EdgeId b) { return nests(g, a, b) && g.edge(a).u < g.edge(b).u; }

bool all_pairs(const std::vector<EdgeId>& xs, const std::vector<EdgeId>& ys, bool same,
               const std::function<bool(EdgeId, EdgeId)>& pred) {
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = same ? i + 1 : 0; j < ys.size(); ++j)
      if (!pred(xs[i], ys[j])) return false;
  return true;
}

}  // namespace

bool check_witness(const OrderedGraph& g, const PatternWitness& w) {
  std::vector<EdgeId> flat;
  for (const auto& grp : w.groups) flat.insert(flat.end(), grp.begin(), grp.end());
  std::sort(flat.begin(), flat.end());
  if (flat != w.edges) return false;
  if (std::adjacent_find(flat.begin(), flat.end()) != flat.end()) return false;
  for (EdgeId e : flat)
    if (e < 0 || e >= g.num_edges()) return false;
  if (static_cast<int>(w.groups.size()) != w.k) return false;

  std::function<bool(EdgeId, EdgeId)> cross = [&](EdgeId a, EdgeId b) { return crosses(g, a, b); };
  std::function<bool(EdgeId, EdgeId)> nest = [&](EdgeId a, EdgeId b) { return nests(g, a, b); };
  switch (w.kind) {
    case PatternKind::Twist:
    case PatternKind::Rainbow: {
      if (w.t != 1) return false;
      for (const auto& grp : w.groups)
        if (grp.size() != 1) return false;
      return all_pairs(flat, flat, true, w.kind == PatternKind::Twist ? cross : nest);
    }
    case PatternKind::Diamond: {
      if (w.t != w.k) return false;
      for (const auto& grp : w.groups)
        if (static_cast<int>(grp.size()) != w.k) return false;
      for (int i = 0; i < w.k; ++i)
        for (int j = 0; j < w.k; ++j) {
          if (j + 1 < w.k && !rises(g, w.groups[i][j], w.groups[i][j + 1])) return false;
          if (i + 1 < w.k && !falls(g, w.groups[i][j], w.groups[i + 1][j])) return false;
        }
      return true;
    }
    case PatternKind::ThickTwist:
    case PatternKind::ThickRainbow: {
      const bool twist = w.kind == PatternKind::ThickTwist;
      for (const auto& grp : w.groups) {
        if (static_cast<int>(grp.size()) != w.t) return false;
        if (!all_pairs(grp, grp, true, twist ? nest : cross)) return false;
      }
      for (size_t a = 0; a < w.groups.size(); ++a)
        for (size_t b = a + 1; b < w.groups.size(); ++b)
          if (!all_pairs(w.groups[a], w.groups[b], false, twist ? cross : nest)) return false;
      return true;
    }
  }
  return false;
}

std::string witness_to_json(const PatternWitness& w) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(w.kind));
  j["k"] = w.k;
  j["t"] = w.t;
  j["groups"] = w.groups;
  return j.dump();
}

PatternWitness witness_from_json(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    const auto name = j.at("kind").get<std::string>();
    for (auto kind : {PatternKind::Twist, PatternKind::Rainbow, PatternKind::Diamond, PatternKind::ThickTwist,
                      PatternKind::ThickRainbow})
      if (to_string(kind) == name)
        return make_witness(kind, j.value("t", 1), j.at("groups").get<std::vector<std::vector<EdgeId>>>());
    throw Error(ErrorCode::SyntaxError, "unknown pattern kind '" + name + "'");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SyntaxError, e.what());
  }
}

PatternWitness largest_rainbow(const OrderedGraph& g) {
  const int m = g.num_edges();
  if (m == 0) return make_witness(PatternKind::Rainbow, 1, {});
  // Edge ids are sorted by left endpoint, so an outer edge always has a
  // smaller id than anything it strictly contains.
  std::vector<int> len(m, 1), prev(m, -1);
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < b; ++a)
      if (falls(g, a, b) && len[a] + 1 > len[b]) {
        len[b] = len[a] + 1;
        prev[b] = a;
      }
  int best = static_cast<int>(std::max_element(len.begin(), len.end()) - len.begin());
  std::vector<std::vector<EdgeId>> groups;
  for (int e = best; e >= 0; e = prev[e]) groups.push_back({e});
  std::reverse(groups.begin(), groups.end());
  return make_witness(PatternKind::Rainbow, 1, std::move(groups));
}

namespace {

// Longest strictly increasing subsequence of ys; returns positions.
std::vector<int> lis_positions(const std::vector<int>& ys) {
  std::vector<int> tails, tail_pos, prev(ys.size(), -1);
  for (int i = 0; i < static_cast<int>(ys.size()); ++i) {
    auto it = std::lower_bound(tails.begin(), tails.end(), ys[i]);
    int at = static_cast<int>(it - tails.begin());
    if (it == tails.end()) {
      tails.push_back(ys[i]);
      tail_pos.push_back(i);
    } else {
      *it = ys[i];
      tail_pos[at] = i;
    }
    prev[i] = at > 0 ? tail_pos[at - 1] : -1;
  }
  std::vector<int> out;
  for (int i = tail_pos.empty() ? -1 : tail_pos.back(); i >= 0; i = prev[i]) out.push_back(i);
  std::reverse(out.begin(), out.end());
  return out;
}

PatternWitness singles(PatternKind kind, const std::vector<int>& ids) {
  std::vector<std::vector<EdgeId>> groups;
  for (int e : ids) groups.push_back({e});
  return make_witness(kind, 1, std::move(groups));
}

}  // namespace

PatternWitness longest_increasing(const GridMatching& m) {
  return singles(PatternKind::Twist, lis_positions(m.pi()));
}

PatternWitness longest_decreasing(const GridMatching& m) {
  std::vector<int> ys = m.pi();
  for (auto& y : ys) y = -y;
  return singles(PatternKind::Rainbow, lis_positions(ys));
}

PatternWitness largest_twist(const OrderedGraph& g, uint64_t budget) {
  if (g.num_edges() == 0) return make_witness(PatternKind::Twist, 1, {});
  if (g.is_matching() && is_separated(g)) return longest_increasing(to_grid(g));
  ConflictTable table(g);
  return singles(PatternKind::Twist, max_clique(table.cross, budget));
}

bool is_diamond(const GridMatching& m, const std::vector<std::vector<EdgeId>>& lab) {
  const int k = static_cast<int>(lab.size());
  std::set<EdgeId> seen;
  for (const auto& row : lab) {
    if (static_cast<int>(row.size()) != k) return false;
    for (EdgeId e : row) {
      if (e < 0 || e >= m.size() || !seen.insert(e).second) return false;
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (j + 1 < k && !m.increasing(lab[i][j], lab[i][j + 1])) return false;
      if (i + 1 < k && !m.decreasing(lab[i][j], lab[i + 1][j])) return false;
    }
  return true;
}

std::optional<std::vector<std::vector<EdgeId>>> detail::find_diamond(const GridMatching& m, int k,
                                                                     uint64_t budget) {
  DiamondSearch search(m, k, budget);
  if (!search.run()) return std::nullopt;
  return search.labeling();
}

PatternWitness largest_diamond(const GridMatching& m, bool exact, uint64_t budget) {
  PatternWitness best = diamond_witness(m);
  if (!exact) return best;
  const int cap = std::min(longest_increasing(m).k, longest_decreasing(m).k);
  for (int k = best.k + 1; k <= cap && k * k <= m.size(); ++k) {
    auto lab = detail::find_diamond(m, k, budget);
    if (!lab) break;
    best = make_witness(PatternKind::Diamond, k, std::move(*lab));
  }
  return best;
}

namespace {

// All t-element chains of `rel` (a strict order given as "a before b"
// with a < b by id), in lexicographic order. Throws SizeLimit past cap.
std::vector<std::vector<EdgeId>> enumerate_groups(int m, int t, const std::function<bool(EdgeId, EdgeId)>& rel,
                                                   size_t cap) {
  std::vector<std::vector<EdgeId>> out;
  std::vector<EdgeId> cur;
  std::function<void(int)> extend = [&](int from) {
    if (static_cast<int>(cur.size()) == t) {
      if (out.size() >= cap) throw Error(ErrorCode::SizeLimit, "too many thick-pattern groups");
      out.push_back(cur);
      return;
    }
    for (int e = from; e < m; ++e) {
      if (!cur.empty() && !rel(cur.back(), e)) continue;
      cur.push_back(e);
      extend(e + 1);
      cur.pop_back();
    }
  };
  extend(0);
  return out;
}

PatternWitness thick_search(const OrderedGraph& g, int t, bool twist, uint64_t budget) {
  const PatternKind kind = twist ? PatternKind::ThickTwist : PatternKind::ThickRainbow;
  const int m = g.num_edges();
  // Thick twist groups are rainbows (outer first); thick rainbow groups
  // are twists (leftmost first). Both relations only go from lower ids.
  auto inner = [&](EdgeId a, EdgeId b) { return twist ? falls(g, a, b) : rises(g, a, b); };
  auto groups = enumerate_groups(m, t, inner, 8192);
  if (groups.empty()) return make_witness(kind, t, {});
  const int n = static_cast<int>(groups.size());
  std::vector<DynBitset> adj(n, DynBitset(n));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      bool ok = all_pairs(groups[a], groups[b], false, [&](EdgeId x, EdgeId y) {
        return twist ? crosses(g, x, y) : nests(g, x, y);
      });
      if (ok) {
        adj[a].set(b);
        adj[b].set(a);
      }
    }
  auto clique = max_clique(adj, budget);
  std::vector<std::vector<EdgeId>> chosen;
  for (int c : clique) chosen.push_back(groups[c]);
  std::sort(chosen.begin(), chosen.end(), [&](const auto& x, const auto& y) { return x.front() < y.front(); });
  return make_witness(kind, t, std::move(chosen));
}

}  // namespace

ThickResult largest_thick(const OrderedGraph& g, int t, uint64_t budget) {
  if (t < 1) throw Error(ErrorCode::BadParams, "thickness must be >= 1");
  return {thick_search(g, t, true, budget), thick_search(g, t, false, budget)};
}

PatternWitness largest_thick_pattern(const OrderedGraph& g, uint64_t budget) {
  PatternWitness best = make_witness(PatternKind::ThickTwist, 0, {});
  for (int t = 1; t <= g.num_edges(); ++t) {
    ThickResult r = largest_thick(g, t, budget);
    if (r.k() < t) break;
    PatternWitness w = r.twist.k >= t ? r.twist : r.rainbow;
    w.groups.resize(t);
    best = make_witness(w.kind, t, std::move(w.groups));
  }
  return best;
}

namespace {

using Labeling = std::vector<std::vector<EdgeId>>;

enum class Quadrant { LowLow, HighHigh, LowHigh, HighLow };  // (x, y)

// A q x q sub-diamond of `lab` inside one quadrant. Chains are rows and
// antichains are columns; the quadrant holds a prefix or suffix of each.
Labeling extract(const Labeling& lab, const std::vector<char>& inside, Quadrant quad, int target) {
  const int q = static_cast<int>(lab.size());
  const bool by_rows = quad == Quadrant::LowLow || quad == Quadrant::HighHigh;
  const bool prefix = quad == Quadrant::LowLow || quad == Quadrant::LowHigh;
  std::vector<int> count(q, 0);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      if (inside[by_rows ? lab[a][b] : lab[b][a]]) ++count[a];
  // Largest side achievable: s lines with at least s points each.
  std::vector<int> sorted = count;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  int reach = 0;
  while (reach < q && sorted[reach] >= reach + 1) ++reach;
  const int s = std::min(target, reach);
  Labeling out(s, std::vector<EdgeId>(s));
  int line = 0;
  for (int a = 0; a < q && line < s; ++a) {
    if (count[a] < s) continue;
    for (int b = 0; b < s; ++b) {
      int pos = prefix ? b : q - s + b;
      if (by_rows)
        out[line][b] = lab[a][pos];
      else
        out[b][line] = lab[pos][a];
    }
    ++line;
  }
  return out;
}

struct Square {
  Labeling lab;
  int side() const { return static_cast<int>(lab.size()); }
};

std::vector<Square> subdivide(const GridMatching& m, const Square& sq) {
  const int q = sq.side();
  std::vector<EdgeId> pts;
  for (const auto& row : sq.lab) pts.insert(pts.end(), row.begin(), row.end());
  const int n = static_cast<int>(pts.size());
  std::vector<int> ys;
  for (EdgeId e : pts) ys.push_back(m.row(e));
  std::vector<EdgeId> xs_sorted = pts;
  std::sort(xs_sorted.begin(), xs_sorted.end());
  std::sort(ys.begin(), ys.end());
  const int half = n / 2;
  const EdgeId x_mid = xs_sorted[half];  // low half: x < x_mid
  const int y_mid = ys[half];

  std::vector<std::vector<char>> inside(4, std::vector<char>(m.size(), 0));
  std::vector<int> cnt(4, 0);
  for (EdgeId e : pts) {
    bool low_x = e < x_mid;
    bool low_y = m.row(e) < y_mid;
    int quad = low_x ? (low_y ? 0 : 2) : (low_y ? 3 : 1);
    inside[quad][e] = 1;
    ++cnt[quad];
  }
  auto heavy = [&](int a) { return 4 * cnt[a] >= n; };
  std::pair<Quadrant, Quadrant> pick;
  if (heavy(0) && heavy(1))
    pick = {Quadrant::LowLow, Quadrant::HighHigh};
  else if (heavy(2) && heavy(3))
    pick = {Quadrant::LowHigh, Quadrant::HighLow};
  else
    throw Error(ErrorCode::InsufficientInput, "no opposite quadrant pair holds a quarter of the points");

  const int target = static_cast<int>(std::ceil((1.0 - std::sqrt(3.0) / 2.0) * q));
  std::vector<Square> out;
  for (Quadrant quad : {pick.first, pick.second}) {
    Square sub{extract(sq.lab, inside[static_cast<int>(quad)], quad, target)};
    if (sub.side() > 0) out.push_back(std::move(sub));
  }
  return out;
}

}  // namespace

PatternWitness thick_from_diamond(const GridMatching& m, int k, const Labeling& labeling) {
  if (k < 1) throw Error(ErrorCode::BadParams, "k must be >= 1");
  if (!is_diamond(m, labeling)) throw Error(ErrorCode::InvalidInput, "labeling is not a diamond");
  if (labeling.empty()) return make_witness(PatternKind::ThickTwist, 0, {});
  const int rounds = k == 1 ? 0 : 2 * static_cast<int>(std::ceil(std::log2(static_cast<double>(k))));

  std::vector<Square> level{{labeling}};
  for (int r = 0; r < rounds; ++r) {
    std::vector<Square> next;
    for (const auto& sq : level) {
      auto parts = subdivide(m, sq);
      next.insert(next.end(), parts.begin(), parts.end());
    }
    level = std::move(next);
  }

  // Leaves occupy disjoint column and row ranges; order them by column and
  // look for a monotone run of their rows.
  std::sort(level.begin(), level.end(), [](const Square& a, const Square& b) { return a.lab[0][0] < b.lab[0][0]; });
  std::vector<int> leaf_rows;
  for (const auto& sq : level) leaf_rows.push_back(m.row(sq.lab[0][0]));
  auto up = lis_positions(leaf_rows);
  for (auto& y : leaf_rows) y = -y;
  auto down = lis_positions(leaf_rows);

  const bool twist = static_cast<int>(up.size()) >= k || up.size() >= down.size();
  const auto& run = twist ? up : down;
  const int len = std::min<int>(k, static_cast<int>(run.size()));
  int t = k;
  for (int i = 0; i < len; ++i) t = std::min(t, level[run[i]].side());

  std::vector<std::vector<EdgeId>> groups;
  for (int i = 0; i < len; ++i) {
    const Labeling& lab = level[run[i]].lab;
    std::vector<EdgeId> grp;
    // A column of the diamond is a rainbow, a row is a twist.
    for (int s = 0; s < t; ++s) grp.push_back(twist ? lab[s][0] : lab[0][s]);
    groups.push_back(std::move(grp));
  }
  return make_witness(twist ? PatternKind::ThickTwist : PatternKind::ThickRainbow, t, std::move(groups));
}

PatternWitness thick_from_diamond(const GridMatching& m, int k) {
  return thick_from_diamond(m, k, diamond_witness(m).groups);
}

}  // namespace mixedlayout
