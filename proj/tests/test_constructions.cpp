#include <doctest.h>

#include <set>

#include "mixedlayout/constructions.hpp"
#include "mixedlayout/error.hpp"
#include "mixedlayout/greene.hpp"
#include "mixedlayout/patterns.hpp"
#include "mixedlayout/solver.hpp"
#include "oracles.hpp"

using namespace mixedlayout;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_CASE("gen_pattern examples") {
  CHECK(gen_diamond(2).pi() == std::vector<int>{3, 4, 1, 2});
  CHECK(gen_diamond(1).size() == 1);
  for (int k = 1; k <= 5; ++k) {
    auto d = gen_diamond(k);
    std::vector<std::vector<EdgeId>> lab(k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lab[i].push_back(i * k + j);
    CHECK(is_diamond(d, lab));
  }

  auto tt = gen_pattern(PatternKind::ThickTwist, 3, 2).to_graph();
  CHECK(tt.num_edges() == 6);
  // Three groups of two nesting edges; edges of different groups cross.
  for (EdgeId a = 0; a < 6; ++a)
    for (EdgeId b = a + 1; b < 6; ++b) {
      auto r = oracle::pair_relation(tt.edge(a), tt.edge(b));
      CHECK(r == (a / 2 == b / 2 ? oracle::Rel::Nest : oracle::Rel::Cross));
    }
  auto tr = gen_pattern(PatternKind::ThickRainbow, 3, 2).to_graph();
  for (EdgeId a = 0; a < 6; ++a)
    for (EdgeId b = a + 1; b < 6; ++b) {
      auto r = oracle::pair_relation(tr.edge(a), tr.edge(b));
      CHECK(r == (a / 2 == b / 2 ? oracle::Rel::Cross : oracle::Rel::Nest));
    }
  CHECK(gen_pattern(PatternKind::Twist, 4).pi() == std::vector<int>{1, 2, 3, 4});
  CHECK(gen_pattern(PatternKind::Rainbow, 3).pi() == std::vector<int>{3, 2, 1});
  CHECK(code_of([] { gen_diamond(0); }) == ErrorCode::BadParams);
}

TEST_CASE("gen_tight_2k shape") {
  for (int k = 1; k <= 4; ++k) {
    auto gm = gen_tight_2k(k);
    CHECK(gm.size() == 2 * k * k * k - k * k + 2 * k);
    auto d = ferrers(gm);
    CHECK(d.square == k);
    CHECK(d.w == k * k + 1);
    CHECK(d.h == k * k + 1);
  }
  auto one = gen_tight_2k(1).to_graph();
  CHECK(one.num_edges() == 3);
  CHECK(oracle::mixed_page_number(one) == 2);
  CHECK(mixed_page_number(one).k == 2);
  CHECK(gen_tight_2k(2).size() == 16);
}

TEST_CASE("gen_alternating_subdivision") {
  auto gm = gen_alternating_subdivision(2);
  CHECK(gm.pi() == std::vector<int>{6, 5, 8, 7, 2, 1, 4, 3, 14, 13, 16, 15, 10, 9, 12, 11});
  CHECK(largest_diamond(gm, true).k == 4);
  CHECK(largest_thick_pattern(gm.to_graph()).k == 2);
  CHECK(gen_alternating_subdivision(1).size() == 1);
  CHECK(code_of([] { gen_alternating_subdivision(3); }) == ErrorCode::BadParams);
}

TEST_CASE("gen_stack_critical realizes the circulant") {
  std::vector<int> labels;
  auto c5 = gen_stack_critical(2, 5, &labels);
  CHECK(c5.num_edges() == 5);
  CHECK(c5.is_matching());
  for (EdgeId a = 0; a < 5; ++a)
    for (EdgeId b = a + 1; b < 5; ++b) {
      int d = std::abs(labels[a] - labels[b]);
      d = std::min(d, 5 - d);
      CHECK((oracle::pair_relation(c5.edge(a), c5.edge(b)) == oracle::Rel::Cross) == (d == 1));
    }
  CHECK(oracle::stack_number(c5) == 3);
  for (EdgeId e = 0; e < 5; ++e) CHECK(oracle::stack_number(c5.without_edge(e)) <= 2);

  auto c7 = gen_stack_critical(3, 7);
  CHECK(criticality(c7, CriticalMode::split(3, 0)).critical);

  CHECK(code_of([] { gen_stack_critical(2, 4); }) == ErrorCode::BadParams);
  CHECK(code_of([] { gen_stack_critical(3, 6); }) == ErrorCode::BadParams);
}

TEST_CASE("gen_2critical") {
  auto g = gen_2critical(2);
  CHECK(g.num_vertices() == 14);
  std::set<Edge> expect{{0, 3}, {2, 7}, {1, 5}, {4, 6}, {8, 13}, {9, 12}, {10, 11}};
  CHECK(std::set<Edge>(g.edges().begin(), g.edges().end()) == expect);
  // With r = 2 the long edge (1,5) covers no other edge, so one queue
  // takes (0,3),(1,5),(2,7) and one stack takes the rest.
  CHECK(oracle::mixed_page_number(g) == 2);
  CHECK(oracle::assignment_ok(g, {false, true}, {0, 0, 0, 1, 1, 1, 1}));
  CHECK_FALSE(criticality(g, CriticalMode::total(2)).critical);

  auto g4 = gen_2critical(4);
  CHECK(g4.num_vertices() == 18);
  CHECK(g4.num_edges() == 9);
  CHECK(criticality(g4, CriticalMode::total(2)).critical);
  CHECK(oracle::mixed_page_number(g4) == 3);
  for (EdgeId e = 0; e < g4.num_edges(); ++e) CHECK(oracle::mixed_page_number(g4.without_edge(e)) == 2);
  CHECK(code_of([] { gen_2critical(3); }) == ErrorCode::BadParams);
}

TEST_CASE("inductive critical families") {
  CHECK(gen_k_critical(2, 14) == gen_2critical(2));
  auto g3 = gen_k_critical(3, 18);
  CHECK(g3.num_edges() == 13);
  CHECK(criticality(g3, CriticalMode::total(3)).critical);
  // The r = 2 base is not 2-critical, and wrapping it does not help.
  CHECK(gen_k_critical(3, 14).num_edges() == 11);
  CHECK_FALSE(criticality(gen_k_critical(3, 14), CriticalMode::total(3)).critical);

  auto sq = gen_sq_critical(2, 1, 5);
  CHECK(sq.num_edges() == 8);
  CHECK(criticality(sq, CriticalMode::split(2, 1)).critical);
}

TEST_CASE("wrap_in_twist nests every old edge inside every new one") {
  auto base = gen_2critical(2);
  auto w = wrap_in_twist(base, 3);
  CHECK(w.num_edges() == base.num_edges() + 3);
  int new_pairs = 0;
  for (EdgeId a = 0; a < w.num_edges(); ++a)
    for (EdgeId b = a + 1; b < w.num_edges(); ++b) {
      auto ea = w.edge(a);
      auto eb = w.edge(b);
      bool a_new = ea.u < 3;
      bool b_new = eb.u < 3;
      if (a_new && b_new) {
        CHECK(oracle::pair_relation(ea, eb) == oracle::Rel::Cross);
        ++new_pairs;
      } else if (a_new != b_new) {
        CHECK(oracle::pair_relation(ea, eb) == oracle::Rel::Nest);
      }
    }
  CHECK(new_pairs == 3);
}

TEST_CASE("random generators are seeded") {
  CHECK(gen_random_matching(10, 4) == gen_random_matching(10, 4));
  CHECK(gen_random_matching(10, 4).is_matching());
  CHECK(gen_random_matching(10, 4).num_edges() == 10);
  auto g = gen_random_graph(8, 12, 9);
  CHECK(g.num_edges() == 12);
  CHECK(g == gen_random_graph(8, 12, 9));
  CHECK(code_of([] { gen_random_graph(3, 4, 0); }) == ErrorCode::BadParams);
}
