#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "mixedlayout/constructions.hpp"
#include "mixedlayout/error.hpp"
#include "mixedlayout/quotient.hpp"
#include "mixedlayout/solver.hpp"
#include "oracles.hpp"

using namespace mixedlayout;

namespace {

std::vector<EdgeId> induced(const OrderedGraph& g, Vertex lo, Vertex hi) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (g.edge(e).u >= lo && g.edge(e).v < hi) out.push_back(e);
  return out;
}

int twist_in(const OrderedGraph& g, Vertex lo, Vertex hi) {
  return oracle::largest_clique(g.edge_subgraph(induced(g, lo, hi)), oracle::Rel::Cross);
}

// Each forest: every connected component is a star whose center is on the
// declared side of all its leaves.
bool one_sided_forests(const OrderedGraph& g, const std::vector<EdgeId>& page, const std::vector<StarForest>& forests) {
  std::vector<EdgeId> all;
  for (const auto& f : forests) {
    std::map<Vertex, std::vector<EdgeId>> inc;
    std::vector<EdgeId> edges;
    for (const auto& s : f.stars) edges.insert(edges.end(), s.edges.begin(), s.edges.end());
    all.insert(all.end(), edges.begin(), edges.end());
    for (EdgeId e : edges) {
      inc[g.edge(e).u].push_back(e);
      inc[g.edge(e).v].push_back(e);
    }
    // In a star forest every edge has an endpoint of degree one (counting
    // parallel copies as one neighbour) and the other endpoint is the
    // center of all its edges.
    for (EdgeId e : edges) {
      const Edge& uv = g.edge(e);
      auto distinct_nbrs = [&](Vertex x) {
        std::set<Vertex> s;
        for (EdgeId f : inc[x]) s.insert(g.edge(f).u == x ? g.edge(f).v : g.edge(f).u);
        return s.size();
      };
      size_t du = distinct_nbrs(uv.u);
      size_t dv = distinct_nbrs(uv.v);
      Vertex center;
      if (du == 1 && dv == 1)
        center = f.center_right ? uv.v : uv.u;
      else if (du == 1)
        center = uv.v;
      else if (dv == 1)
        center = uv.u;
      else
        return false;
      Vertex leaf = center == uv.u ? uv.v : uv.u;
      if ((center > leaf) != f.center_right) return false;
    }
  }
  std::sort(all.begin(), all.end());
  std::vector<EdgeId> want = page;
  std::sort(want.begin(), want.end());
  return all == want;
}

std::vector<EdgeId> all_edges(const OrderedGraph& g) {
  std::vector<EdgeId> out(g.num_edges());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

PageAssignment stack_layout(const OrderedGraph& g) {
  PageAssignment a;
  a.page_of.assign(g.num_edges(), 0);
  auto pages = stack_cover(g, all_edges(g));
  for (size_t p = 0; p < pages.size(); ++p) {
    a.spec.kinds.push_back(PageKind::Stack);
    for (EdgeId e : pages[p]) a.page_of[e] = static_cast<int>(p);
  }
  return a;
}

}  // namespace

TEST_CASE("interval_partition_by_twists examples") {
  auto twist2 = build_graph(6, {{0, 2}, {1, 3}});
  CHECK(interval_partition_by_twists(twist2, 1).starts == std::vector<Vertex>{0, 4});
  CHECK(interval_partition_by_twists(build_graph(4, {{0, 2}, {1, 3}}), 1).starts == std::vector<Vertex>{0});
  auto rainbow = build_graph(6, {{0, 5}, {1, 4}, {2, 3}});
  CHECK(interval_partition_by_twists(rainbow, 1).starts == std::vector<Vertex>{0});

  auto two = build_graph(12, {{0, 3}, {1, 4}, {2, 5}, {6, 9}, {7, 10}, {8, 11}});
  CHECK(interval_partition_by_twists(two, 2).starts == std::vector<Vertex>{0, 6});
  CHECK(interval_partition_by_twists(build_graph(0, {}), 1).num_blocks() == 0);
}

TEST_CASE("interval blocks are minimal and never hold a (k+2)-twist") {
  for (int seed = 0; seed < 80; ++seed) {
    auto g = seed % 2 ? gen_random_matching(7 + seed % 5, seed) : gen_random_graph(12, 14, seed);
    for (int k = 1; k <= 2; ++k) {
      auto p = interval_partition_by_twists(g, k);
      CHECK(p.starts.front() == 0);
      for (int b = 0; b < p.num_blocks(); ++b) {
        const Vertex lo = p.begin(b);
        const Vertex hi = p.end(b);
        CHECK(twist_in(g, lo, hi) <= k + 1);
        if (b + 1 < p.num_blocks()) {
          CHECK(twist_in(g, lo, hi) == k + 1);
          CHECK(twist_in(g, lo, hi - 1) <= k);
        } else {
          // The last block closes only where a twist ends or at the end.
          CHECK((twist_in(g, lo, hi) <= k || twist_in(g, lo, hi - 1) <= k));
        }
      }
    }
  }
}

TEST_CASE("quotient_graph examples") {
  auto g = gen_random_graph(8, 10, 3);
  auto id = quotient_graph(g, IntervalPartition::singletons(8));
  CHECK(id.graph.edges() == g.edges());
  CHECK(id.intra.empty());

  auto one = quotient_graph(g, IntervalPartition::whole(8));
  CHECK(one.graph.num_vertices() == 1);
  CHECK(one.graph.num_edges() == 0);
  CHECK(one.intra.size() == 10);

  // 2-thick 2-rainbow, one block per pair of twist endpoints.
  auto tr = gen_thick_rainbow(2, 2).to_graph();
  auto q = quotient_graph(tr, IntervalPartition::from_starts(8, {0, 2, 4, 6}));
  CHECK(q.graph.multi());
  CHECK(q.graph.edges() == std::vector<Edge>{{0, 3}, {0, 3}, {1, 2}, {1, 2}});
  for (size_t i = 0; i < q.lift.size(); ++i) {
    auto img = q.graph.edge(static_cast<EdgeId>(i));
    auto src = tr.edge(q.lift[i]);
    CHECK(img.u == src.u / 2);
    CHECK(img.v == src.v / 2);
  }
  CHECK_THROWS_AS(IntervalPartition::from_starts(8, {1, 4}), Error);
}

TEST_CASE("quotients keep the relation of edges with four distinct blocks") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = gen_random_graph(16, 20, trial);
    std::vector<Vertex> starts{0};
    for (Vertex v = 1; v < 16; ++v)
      if (rng() % 3 == 0) starts.push_back(v);
    auto p = IntervalPartition::from_starts(16, starts);
    auto q = quotient_graph(g, p);
    CHECK(q.lift.size() + q.intra.size() == static_cast<size_t>(g.num_edges()));
    for (EdgeId a = 0; a < q.graph.num_edges(); ++a)
      for (EdgeId b = a + 1; b < q.graph.num_edges(); ++b) {
        auto ea = q.graph.edge(a);
        auto eb = q.graph.edge(b);
        if (ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v) continue;
        CHECK(oracle::pair_relation(ea, eb) == oracle::pair_relation(g.edge(q.lift[a]), g.edge(q.lift[b])));
      }
  }
}

TEST_CASE("star_forests examples") {
  auto matching = build_graph(8, {{0, 5}, {1, 2}, {3, 4}, {6, 7}});
  auto f = star_forests(matching, all_edges(matching), PageKind::Stack);
  CHECK(f.size() == 1);
  CHECK(f[0].center_right);

  auto star = build_graph(4, {{0, 3}, {1, 3}, {2, 3}});
  auto s = star_forests(star, all_edges(star), PageKind::Stack);
  CHECK(s.size() == 1);
  CHECK(s[0].stars.size() == 1);
  CHECK(s[0].stars[0].center == 3);

  // Fan triangulation of a hexagon plus its outer cycle: maximal
  // outerplanar, one stack.
  auto mop = build_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {0, 2}, {0, 3}, {0, 4}});
  CHECK(oracle::page_ok(mop, all_edges(mop), true));
  auto m = star_forests(mop, all_edges(mop), PageKind::Stack);
  CHECK(m.size() <= 6);
  CHECK(check_star_forests(mop, all_edges(mop), m));
  CHECK(one_sided_forests(mop, all_edges(mop), m));

  CHECK_THROWS_AS(star_forests(build_graph(4, {{0, 2}, {1, 3}}), {0, 1}, PageKind::Stack), Error);
  CHECK_THROWS_AS(star_forests(build_graph(4, {{0, 3}, {1, 2}}), {0, 1}, PageKind::Queue), Error);
}

TEST_CASE("star_forests on random stack and queue pages stays within six one-sided forests") {
  for (int seed = 0; seed < 150; ++seed) {
    const int n = 10 + seed % 20;
    auto g = gen_random_graph(n, std::min(30 + seed % 60, n * (n - 1) / 2), seed);
    auto stacks = stack_cover(g, all_edges(g));
    for (const auto& page : stacks) {
      auto f = star_forests(g, page, PageKind::Stack);
      CHECK(f.size() <= 6);
      CHECK(check_star_forests(g, page, f));
      CHECK(one_sided_forests(g, page, f));
    }
    auto q = rainbow_depth_layout(g);
    std::vector<std::vector<EdgeId>> queues(q.num_pages());
    for (EdgeId e = 0; e < g.num_edges(); ++e) queues[q.page_of[e]].push_back(e);
    for (const auto& page : queues) {
      auto f = star_forests(g, page, PageKind::Queue);
      CHECK(f.size() <= 6);
      CHECK(check_star_forests(g, page, f));
      CHECK(one_sided_forests(g, page, f));
    }
  }
}

TEST_CASE("stack_cover is valid and exact on small inputs") {
  for (int seed = 0; seed < 40; ++seed) {
    auto g = gen_random_graph(8, 6, 300 + seed);
    auto pages = stack_cover(g, all_edges(g));
    for (const auto& p : pages) CHECK(oracle::page_ok(g, p, true));
    CHECK(static_cast<int>(pages.size()) == oracle::stack_number(g));
  }
}

TEST_CASE("transfer_layout degenerate partitions") {
  auto g = gen_random_matching(12, 9);
  auto single = IntervalPartition::singletons(g.num_vertices());
  auto lay = mixed_page_number(g).assignment;
  auto res = transfer_layout(g, single, lay, 2);
  CHECK(is_valid_assignment(g, res.assignment));
  CHECK(res.report.intra_pages == 0);
  CHECK(res.report.pages_used == res.assignment.num_pages());

  auto whole = IntervalPartition::whole(g.num_vertices());
  auto empty_h = quotient_graph(g, whole).graph;
  auto res2 = transfer_layout(g, whole, PageAssignment{}, 2);
  CHECK(empty_h.num_edges() == 0);
  CHECK(is_valid_assignment(g, res2.assignment));
  CHECK(res2.assignment.num_pages() == mixed_page_number(g).k);

  PageAssignment bad{PageSpec::parse("S"), std::vector<int>(g.num_edges(), 0)};
  if (!is_valid_assignment(g, bad)) CHECK_THROWS_AS(transfer_layout(g, single, bad, 2), Error);
}

TEST_CASE("transfer_layout on a thick twist with blocks per group") {
  auto g = gen_thick_twist(2, 4).to_graph();
  // Left endpoints 0..7, right endpoints 8..15; one block per group side.
  auto p = IntervalPartition::from_starts(16, {0, 2, 4, 6, 8, 10, 12, 14});
  auto h = quotient_graph(g, p).graph;
  auto res = transfer_layout(g, p, mixed_page_number(h).assignment, 2);
  CHECK(is_valid_assignment(g, res.assignment));
  CHECK(res.report.within_bound);
  CHECK(res.report.pages_used <= res.report.bound);
  CHECK(res.report.max_forests <= 6);
}

TEST_CASE("transfer_layout is valid for random matchings, partitions and quotient layouts") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = gen_random_matching(10 + trial % 20, trial);
    std::vector<Vertex> starts{0};
    for (Vertex v = 1; v < g.num_vertices(); ++v)
      if (rng() % 4 == 0) starts.push_back(v);
    auto p = IntervalPartition::from_starts(g.num_vertices(), starts);
    auto h = quotient_graph(g, p).graph;
    PageAssignment lay = trial % 2 ? stack_layout(h) : rainbow_depth_layout(h);
    auto res = transfer_layout(g, p, lay, 1 + trial % 3);
    CHECK(is_valid_assignment(g, res.assignment));
  }
}

TEST_CASE("iterated_quotient_layout") {
  auto rainbow = build_graph(8, {{0, 7}, {1, 6}, {2, 5}, {3, 4}});
  auto direct = iterated_quotient_layout(rainbow, 1);
  CHECK(direct.levels.empty());
  CHECK(direct.assignment.num_pages() == 1);

  // Any 2-twist needs a second level when k = 1.
  PatternWitness w;
  auto tr = gen_thick_rainbow(2, 2).to_graph();
  try {
    iterated_quotient_layout(tr, 1, 200'000, &w);
    FAIL("expected DepthExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DepthExceeded);
  }
  CHECK(w.kind == PatternKind::ThickRainbow);
  CHECK(w.k == 1);
  CHECK(check_witness(tr, w));

  // Six 3-twists in a row, one endpoint of an outer 3-twist after each.
  std::vector<Edge> es;
  std::vector<Vertex> outer;
  int n = 0;
  for (int slot = 0; slot < 6; ++slot) {
    for (int i = 0; i < 3; ++i) es.push_back({n + i, n + 3 + i});
    n += 6;
    outer.push_back(n++);
  }
  for (int i = 0; i < 3; ++i) es.push_back({outer[i], outer[i + 3]});
  auto nested = build_graph(n, es);
  PatternWitness w2;
  CHECK_THROWS_AS(iterated_quotient_layout(nested, 2, 200'000, &w2), Error);
  CHECK(w2.k == 2);
  CHECK(w2.t == 2);
  CHECK(check_witness(nested, w2));
  auto three = iterated_quotient_layout(nested, 3);
  CHECK(three.levels.empty());
  CHECK(is_valid_assignment(nested, three.assignment));

  int layouts = 0, depth = 0;
  for (int seed = 0; seed < 40; ++seed) {
    auto g = gen_random_matching(40, seed);
    for (int k : {2, 3}) {
      PatternWitness wit;
      try {
        auto res = iterated_quotient_layout(g, k, 200'000, &wit);
        CHECK(is_valid_assignment(g, res.assignment));
        ++layouts;
      } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::DepthExceeded);
        CHECK(wit.k == k);
        CHECK(wit.t == k);
        CHECK(check_witness(g, wit));
        ++depth;
      }
    }
  }
  CHECK(layouts > 0);
  MESSAGE("layouts: " << layouts << ", depth exceeded: " << depth);
}

TEST_CASE("edge_color examples") {
  auto path = build_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(edge_color(path).size() <= 3);
  auto star = build_graph(5, {{0, 4}, {1, 4}, {2, 4}, {3, 4}});
  CHECK(edge_color(star).size() == 4);

  for (int seed = 0; seed < 100; ++seed) {
    auto g = gen_random_graph(12, 10 + seed % 40, seed);
    auto colors = edge_color(g);
    CHECK(static_cast<int>(colors.size()) <= g.max_degree() + 1);
    std::vector<int> seen(g.num_edges(), 0);
    for (const auto& m : colors) {
      std::set<Vertex> used;
      for (EdgeId e : m) {
        ++seen[e];
        CHECK(used.insert(g.edge(e).u).second);
        CHECK(used.insert(g.edge(e).v).second);
      }
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  }
}

TEST_CASE("bounded_degree_layout is valid") {
  for (int seed = 0; seed < 20; ++seed) {
    auto g = gen_random_graph(30, 30, seed);
    try {
      auto a = bounded_degree_layout(g, 3);
      CHECK(is_valid_assignment(g, a));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DepthExceeded);
    }
  }
}
