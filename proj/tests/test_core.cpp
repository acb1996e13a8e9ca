#include <doctest.h>

#include "mixedlayout/error.hpp"
#include "mixedlayout/graph.hpp"
#include "mixedlayout/io.hpp"
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

TEST_CASE("build_graph normalizes and rejects bad input") {
  auto g = build_graph(4, {{0, 2}, {1, 3}});
  CHECK(g.num_edges() == 2);
  CHECK(classify_pair(g, 0, 1).kind == Relation::Cross);

  auto h = build_graph(4, {{3, 1}});
  CHECK(h.edge(0) == Edge{1, 3});

  CHECK(code_of([] { build_graph(2, {{0, 1}, {0, 1}}); }) == ErrorCode::DuplicateEdge);
  CHECK(code_of([] { build_graph(2, {{0, 2}}); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { build_graph(2, {{1, 1}}); }) == ErrorCode::SelfLoop);
  CHECK(build_graph(2, {{0, 1}, {1, 0}}, true).num_edges() == 2);
}

TEST_CASE("classify_pair examples") {
  auto nest = build_graph(4, {{0, 3}, {1, 2}});
  auto r = classify_pair(nest, 1, 0);
  CHECK(r.kind == Relation::Nest);
  CHECK(nest.edge(r.outer) == Edge{0, 3});
  CHECK(nest.edge(r.inner) == Edge{1, 2});

  auto shared = build_graph(3, {{0, 1}, {1, 2}});
  CHECK(classify_pair(shared, 0, 1).kind == Relation::SharedEndpoint);
  auto disjoint = build_graph(4, {{0, 1}, {2, 3}});
  CHECK(classify_pair(disjoint, 0, 1).kind == Relation::Disjoint);
  CHECK(code_of([&] { classify_pair(disjoint, 0, 2); }) == ErrorCode::BadEdgeId);
  CHECK(code_of([&] { classify_pair(disjoint, 1, 1); }) == ErrorCode::BadEdgeId);
}

TEST_CASE("classify_pair agrees with the endpoint-pattern oracle on all pairs of 6 points") {
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      for (int c = 0; c < 6; ++c)
        for (int d = c + 1; d < 6; ++d) {
          if (a == c && b == d) continue;
          auto g = build_graph(6, {{a, b}, {c, d}});
          auto r1 = classify_pair(g, 0, 1);
          auto r2 = classify_pair(g, 1, 0);
          CHECK(r1.kind == r2.kind);
          CHECK(r1.outer == r2.outer);
          auto o = oracle::pair_relation({a, b}, {c, d});
          switch (r1.kind) {
            case Relation::Cross: CHECK(o == oracle::Rel::Cross); break;
            case Relation::Nest: CHECK(o == oracle::Rel::Nest); break;
            case Relation::SharedEndpoint: CHECK(o == oracle::Rel::Shared); break;
            case Relation::Disjoint: CHECK(o == oracle::Rel::Disjoint); break;
          }
        }
}

TEST_CASE("validate_assignment examples") {
  auto twist = build_graph(4, {{0, 2}, {1, 3}});
  auto rainbow = build_graph(4, {{0, 3}, {1, 2}});
  PageAssignment one_stack{PageSpec::parse("S"), {0, 0}};
  PageAssignment one_queue{PageSpec::parse("Q"), {0, 0}};
  CHECK(validate_assignment(twist, one_stack) == std::vector<Violation>{{0, 1, 0}});
  CHECK(validate_assignment(twist, one_queue).empty());
  CHECK(validate_assignment(rainbow, one_queue).size() == 1);
  CHECK(validate_assignment(rainbow, one_stack).empty());

  auto path = build_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(is_valid_assignment(path, {PageSpec::parse("S"), {0, 0, 0}}));
  CHECK(code_of([&] { validate_assignment(twist, {PageSpec::parse("S"), {0}}); }) ==
        ErrorCode::CoverageMismatch);
  CHECK(code_of([&] { validate_assignment(twist, {PageSpec::parse("S"), {0, 1}}); }) ==
        ErrorCode::CoverageMismatch);
}

TEST_CASE("validate_assignment matches a pairwise oracle on all 2-page assignments of 4-edge matchings") {
  oracle::for_each_matching(4, [](const OrderedGraph& g) {
    for (int kinds = 0; kinds < 4; ++kinds) {
      PageSpec spec;
      std::vector<bool> stack;
      for (int p = 0; p < 2; ++p) {
        bool s = kinds >> p & 1;
        spec.kinds.push_back(s ? PageKind::Stack : PageKind::Queue);
        stack.push_back(s);
      }
      for (int mask = 0; mask < 16; ++mask) {
        std::vector<int> page_of;
        for (int e = 0; e < 4; ++e) page_of.push_back(mask >> e & 1);
        CHECK(is_valid_assignment(g, {spec, page_of}) == oracle::assignment_ok(g, stack, page_of));
      }
    }
  });
}

TEST_CASE("to_grid examples") {
  CHECK(to_grid(build_graph(4, {{0, 2}, {1, 3}})).pi() == std::vector<int>{1, 2});
  CHECK(to_grid(build_graph(4, {{0, 3}, {1, 2}})).pi() == std::vector<int>{2, 1});
  CHECK(to_grid(build_graph(8, {{0, 6}, {1, 7}, {2, 4}, {3, 5}})).pi() == std::vector<int>{3, 4, 1, 2});
  CHECK(code_of([] { to_grid(build_graph(4, {{0, 1}, {2, 3}})); }) == ErrorCode::NotSeparated);
  CHECK(code_of([] { to_grid(build_graph(4, {{0, 2}, {0, 3}})); }) == ErrorCode::NotMatching);
  CHECK(separation_cut(build_graph(3, {})) == 0);
}

TEST_CASE("grid relations mirror crossing and nesting for every permutation up to 6") {
  for (int m = 1; m <= 6; ++m)
    oracle::for_each_permutation(m, [&](const GridMatching& gm) {
      auto g = gm.to_graph();
      CHECK(to_grid(g) == gm);
      for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
          auto r = classify_pair(g, a, b).kind;
          CHECK((r == Relation::Cross) == gm.increasing(a, b));
          CHECK((r == Relation::Nest) == gm.decreasing(a, b));
        }
    });
}

TEST_CASE("canonicalize_pattern drops isolated vertices and is idempotent") {
  auto c = canonicalize_pattern(build_graph(5, {{0, 4}}));
  CHECK(c == build_graph(2, {{0, 1}}));
  CHECK(canonicalize_pattern(c) == c);

  auto g = build_graph(6, {{1, 3}, {2, 5}});
  auto cg = canonicalize_pattern(g);
  CHECK(cg == build_graph(4, {{0, 2}, {1, 3}}));
  CHECK(classify_pair(cg, 0, 1).kind == classify_pair(g, 0, 1).kind);

  auto shared = build_graph(7, {{1, 3}, {3, 6}, {0, 6}});
  auto cs = canonicalize_pattern(shared);
  CHECK(cs.num_vertices() == 4);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) CHECK(classify_pair(cs, a, b).kind == classify_pair(shared, a, b).kind);
}

TEST_CASE("text formats round trip") {
  auto g = parse_graph("4 2\n0 2\n1 3\n");
  CHECK(g == build_graph(4, {{0, 2}, {1, 3}}));
  CHECK(serialize_graph(g) == "4 2\n0 2\n1 3\n");
  CHECK(serialize_graph(parse_graph(serialize_graph(g))) == serialize_graph(g));

  auto p = parse_perm("perm: 3 4 1 2");
  CHECK(p.pi() == std::vector<int>{3, 4, 1, 2});
  CHECK(serialize_perm(p) == "perm: 3 4 1 2\n");
  CHECK(parse_any_graph("perm: 2 1\n") == build_graph(4, {{0, 3}, {1, 2}}));

  PageAssignment a{PageSpec::parse("SQ"), {1, 0, 1}};
  CHECK(assignment_to_json(a) == R"({"spec":["S","Q"],"pages":[1,0,1]})");
  CHECK(assignment_from_json(assignment_to_json(a)) == a);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](std::string_view text) {
    try {
      parse_graph(text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SyntaxError);
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("4 2\n0 2\n1 x\n") == 3);
  CHECK(line_of("4 2\n0 2\n") == 2);
  CHECK(line_of("") == 1);
  CHECK(line_of("3 1\n0 5\n") == 2);
  CHECK(code_of([] { parse_perm("perm: 1 1"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_perm("3 4 1 2"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { assignment_from_json("{\"spec\":[\"X\"],\"pages\":[]}"); }) == ErrorCode::SyntaxError);
}

TEST_CASE("page spec helpers") {
  auto s = PageSpec::split(2, 1);
  CHECK(s.str() == "SSQ");
  CHECK(s.stacks() == 2);
  CHECK(s.queues() == 1);
  CHECK(PageSpec::parse("ssq") == s);
  PageAssignment a{PageSpec::parse("SQS"), {2, 2}};
  auto c = a.compacted();
  CHECK(c.spec.str() == "S");
  CHECK(c.page_of == std::vector<int>{0, 0});
}
