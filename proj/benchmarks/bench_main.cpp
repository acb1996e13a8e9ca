#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mixedlayout/constructions.hpp"
#include "mixedlayout/enumeration.hpp"
#include "mixedlayout/greene.hpp"
#include "mixedlayout/patterns.hpp"
#include "mixedlayout/quotient.hpp"
#include "mixedlayout/solver.hpp"

using namespace mixedlayout;

namespace {

GridMatching random_perm(int m, uint64_t seed) {
  std::vector<int> pi(m);
  std::iota(pi.begin(), pi.end(), 1);
  std::mt19937_64 rng(seed);
  std::shuffle(pi.begin(), pi.end(), rng);
  return GridMatching(pi);
}

void BM_MixedPageNumberRandomMatching(benchmark::State& state) {
  const auto g = gen_random_matching(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(mixed_page_number(g).k);
}
BENCHMARK(BM_MixedPageNumberRandomMatching)->Arg(10)->Arg(16)->Arg(22);

void BM_FeasibleDiamond3(benchmark::State& state) {
  const auto g = gen_diamond(3).to_graph();
  for (auto _ : state) benchmark::DoNotOptimize(feasible(g, PageSpec::split(1, 1)).feasible);
}
BENCHMARK(BM_FeasibleDiamond3);

void BM_Ferrers(benchmark::State& state) {
  const auto m = random_perm(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(ferrers(m).square);
}
BENCHMARK(BM_Ferrers)->Arg(64)->Arg(256)->Arg(1024);

void BM_ApproxMixedLayout(benchmark::State& state) {
  const auto m = random_perm(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(approx_mixed_layout(m).num_pages());
}
BENCHMARK(BM_ApproxMixedLayout)->Arg(64)->Arg(256);

void BM_LargestTwistGraph(benchmark::State& state) {
  const auto g = gen_random_graph(40, static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(largest_twist(g).k);
}
BENCHMARK(BM_LargestTwistGraph)->Arg(60)->Arg(120);

void BM_IteratedQuotientLayout(benchmark::State& state) {
  const auto g = gen_random_matching(static_cast<int>(state.range(0)), 13);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(iterated_quotient_layout(g, 3).assignment.num_pages());
    } catch (const std::exception&) {
    }
  }
}
BENCHMARK(BM_IteratedQuotientLayout)->Arg(20)->Arg(40);

void BM_FindCriticalSeparated(benchmark::State& state) {
  const auto family = EnumFamily::separated(4, 4, 6);
  for (auto _ : state) benchmark::DoNotOptimize(find_critical(family, CriticalMode::total(1)).patterns.size());
}
BENCHMARK(BM_FindCriticalSeparated)->Unit(benchmark::kMillisecond);

void BM_ContainsPattern(benchmark::State& state) {
  const auto g = gen_random_graph(16, 30, 2);
  const auto h = gen_diamond(2).to_graph();
  for (auto _ : state) benchmark::DoNotOptimize(contains_pattern(g, h));
}
BENCHMARK(BM_ContainsPattern);

}  // namespace

BENCHMARK_MAIN();
