#pragma once

#include <cstdint>
#include <vector>

#include "mixedlayout/bitset.hpp"

namespace mixedlayout {

// Exact maximum clique by branch and bound with greedy-coloring bounds.
// adj[i] must not contain i. Throws SizeLimit once more than `budget`
// search nodes have been expanded. Ties resolve to the first clique found,
// which is deterministic for a given input.
std::vector<int> max_clique(const std::vector<DynBitset>& adj, uint64_t budget = 50'000'000);

// Greedy first-fit proper coloring in the given vertex order; returns the
// color of each vertex.
std::vector<int> greedy_coloring(const std::vector<DynBitset>& adj, const std::vector<int>& order);

}  // namespace mixedlayout
