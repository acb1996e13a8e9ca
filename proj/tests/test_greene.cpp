#include <doctest.h>

#include <random>

#include "mixedlayout/constructions.hpp"
#include "mixedlayout/greene.hpp"
#include "mixedlayout/solver.hpp"
#include "oracles.hpp"

using namespace mixedlayout;

namespace {

std::vector<int> prefix_sums(const std::vector<int>& xs, int len) {
  std::vector<int> out;
  int s = 0;
  for (int i = 0; i < len; ++i) out.push_back(s += i < static_cast<int>(xs.size()) ? xs[i] : 0);
  return out;
}

}  // namespace

TEST_CASE("rsk_shape examples") {
  CHECK(rsk_shape(GridMatching({1, 2, 3})) == std::vector<int>{3});
  CHECK(rsk_shape(GridMatching({3, 2, 1})) == std::vector<int>{1, 1, 1});
  CHECK(rsk_shape(GridMatching({3, 4, 1, 2})) == std::vector<int>{2, 2});
  auto brute = oracle::coverage_profile({3, 4, 1, 2}, true);
  CHECK(brute[0] == 2);
  CHECK(brute[1] == 4);
}

TEST_CASE("conjugate is an involution") {
  CHECK(conjugate({5, 3, 1}) == std::vector<int>{3, 2, 2, 1, 1});
  CHECK(conjugate(conjugate({5, 3, 1})) == std::vector<int>{5, 3, 1});
  CHECK(conjugate({}).empty());
}

TEST_CASE("ferrers examples") {
  auto d = ferrers(GridMatching({3, 4, 1, 2}));
  CHECK(d.rows == std::vector<int>{2, 2});
  CHECK(d.square == 2);
  CHECK(d.c == std::vector<int>{2, 4});
  CHECK(d.a == std::vector<int>{2, 4});

  auto twist = ferrers(GridMatching({1, 2, 3, 4}));
  CHECK(twist.rows == std::vector<int>{4});
  CHECK(twist.square == 1);
  CHECK(twist.w == 1);
  CHECK(twist.h == 4);
}

TEST_CASE("a matching with Ferrers rows 5, 3, 1 checked by brute-force chain coverage") {
  GridMatching gm({1, 2, 4, 3, 6, 5, 9, 8, 7});
  auto brute = oracle::coverage_profile(gm.pi(), true);
  CHECK(brute[0] == 5);
  CHECK(brute[1] == 8);
  CHECK(brute[2] == 9);
  auto d = ferrers(gm);
  CHECK(d.rows == std::vector<int>{5, 3, 1});
  CHECK(d.c == std::vector<int>{5, 8, 9});
}

TEST_CASE("Greene prefix sums equal brute-force coverage for all permutations up to 6") {
  for (int m = 1; m <= 6; ++m)
    oracle::for_each_permutation(m, [&](const GridMatching& gm) {
      auto d = ferrers(gm);
      auto chains = oracle::coverage_profile(gm.pi(), true);
      auto antichains = oracle::coverage_profile(gm.pi(), false);
      CHECK(prefix_sums(d.rows, m) == chains);
      CHECK(prefix_sums(conjugate(d.rows), m) == antichains);
    });
}

TEST_CASE("max_family covers the prefix sums and its parts are chains") {
  auto check = [](const GridMatching& gm) {
    const int m = gm.size();
    auto d = ferrers(gm);
    auto c = prefix_sums(d.rows, m);
    auto a = prefix_sums(conjugate(d.rows), m);
    for (int k = 1; k <= m; ++k) {
      for (auto kind : {FamilyKind::Chains, FamilyKind::Antichains}) {
        auto fam = max_family(gm, kind, k);
        CHECK(fam.covered == (kind == FamilyKind::Chains ? c : a)[k - 1]);
        CHECK(static_cast<int>(fam.parts.size()) <= k);
        std::vector<char> used(m, 0);
        for (const auto& part : fam.parts) {
          for (size_t i = 0; i < part.size(); ++i) {
            CHECK(!used[part[i]]);
            used[part[i]] = 1;
            for (size_t j = i + 1; j < part.size(); ++j)
              CHECK(oracle::grid_less(gm.pi(), part[i], part[j], kind == FamilyKind::Chains));
          }
        }
      }
    }
  };
  for (int m = 1; m <= 6; ++m) oracle::for_each_permutation(m, check);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> pi(40);
    std::iota(pi.begin(), pi.end(), 1);
    std::shuffle(pi.begin(), pi.end(), rng);
    check(GridMatching(pi));
  }
}

TEST_CASE("diamond_witness examples") {
  auto w = diamond_witness(GridMatching({3, 4, 1, 2}));
  CHECK(w.k == 2);
  CHECK(w.edges == std::vector<EdgeId>{0, 1, 2, 3});
  CHECK(check_witness(GridMatching({3, 4, 1, 2}).to_graph(), w));

  auto twist = diamond_witness(GridMatching({1, 2, 3}));
  CHECK(twist.k == 1);
  CHECK(twist.edges.size() == 1);

  auto tight = gen_tight_2k(2);
  auto tw = diamond_witness(tight);
  CHECK(tw.k == 2);
  CHECK(is_diamond(tight, tw.groups));
  CHECK(check_witness(tight.to_graph(), tw));
}

TEST_CASE("diamond_witness always yields a square-sized diamond") {
  for (int m = 1; m <= 7; ++m)
    oracle::for_each_permutation(m, [&](const GridMatching& gm) {
      auto w = diamond_witness(gm);
      CHECK(w.k == ferrers(gm).square);
      CHECK(is_diamond(gm, w.groups));
    });
}

TEST_CASE("approx_mixed_layout examples") {
  auto rainbow = approx_mixed_layout(GridMatching({2, 1}));
  CHECK(rainbow.num_pages() == 1);
  CHECK(rainbow.spec.str() == "S");

  GridMatching d2({3, 4, 1, 2});
  auto a = approx_mixed_layout(d2);
  CHECK(a.num_pages() <= 4);
  CHECK(is_valid_assignment(d2.to_graph(), a));

  auto tight = gen_tight_2k(2);
  auto t = approx_mixed_layout(tight);
  CHECK(t.num_pages() == 4);
  CHECK(is_valid_assignment(tight.to_graph(), t));
}

TEST_CASE("approx_mixed_layout stays within twice the square on every permutation up to 7") {
  for (int m = 1; m <= 7; ++m)
    oracle::for_each_permutation(m, [&](const GridMatching& gm) {
      auto a = approx_mixed_layout(gm);
      const int k = ferrers(gm).square;
      CHECK(a.num_pages() <= 2 * k);
      CHECK(a.num_pages() >= k);
      CHECK(is_valid_assignment(gm.to_graph(), a));
    });
}
