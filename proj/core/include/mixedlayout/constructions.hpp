#pragma once

#include <cstdint>
#include <vector>

#include "mixedlayout/graph.hpp"
#include "mixedlayout/patterns.hpp"

namespace mixedlayout {

// k x k diamond: k blocks of k increasing values, blocks in decreasing
// order. k=2 gives 3 4 1 2.
GridMatching gen_diamond(int k);

// t-thick k-twist: k groups in increasing order, each group a t-rainbow.
GridMatching gen_thick_twist(int t, int k);
// t-thick k-rainbow: k groups in decreasing order, each group a t-twist.
GridMatching gen_thick_rainbow(int t, int k);

// kind Diamond ignores t. Twist/Rainbow give plain k-patterns.
GridMatching gen_pattern(PatternKind kind, int k, int t = 1);

// Matching with mixed page number 2k but no (k+1)-diamond: a k-thick
// rainbow of length k(k-1)+1 above a k-thick twist of length k^2+1.
// 2k^3 - k^2 + 2k edges.
GridMatching gen_tight_2k(int k);

// 2^h points, h = 4 log2 k, combining halves along the diagonal on odd
// recursion levels and the anti-diagonal on even ones. k must be a power
// of two.
GridMatching gen_alternating_subdivision(int k);

// Matching whose crossing graph is the circulant C(n; 1..s-1): an odd
// cycle for s = 2 (n odd >= 3), n = rs+1 for s >= 3. Found by searching
// over endpoint words. If labels is given it receives the circulant vertex
// of each edge id.
OrderedGraph gen_stack_critical(int s, int n, std::vector<int>* labels = nullptr,
                                uint64_t budget = 10'000'000);

// n = 2(r+2)+6 vertices, r >= 2 even.
OrderedGraph gen_2critical(int r);

// Wraps g in a t-twist on fresh vertices: every new edge starts before
// and ends after all of g, so each one strictly contains every old edge.
OrderedGraph wrap_in_twist(const OrderedGraph& g, int t);

// k-critical for k >= 2: gen_2critical with n = 2(r+2)+6 vertices, then
// one (j+2)-twist wrapper for each j = 2..k-1.
OrderedGraph gen_k_critical(int k, int n);
// (s,q)-critical: gen_stack_critical(s, n) wrapped q times in an
// (s+1)-twist.
OrderedGraph gen_sq_critical(int s, int q, int n);

// Uniform perfect matching on 2m points.
OrderedGraph gen_random_matching(int m, uint64_t seed);
// m distinct edges on n vertices, chosen uniformly.
OrderedGraph gen_random_graph(int n, int m, uint64_t seed);

}  // namespace mixedlayout
