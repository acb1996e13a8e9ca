#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mixedlayout/graph.hpp"

namespace mixedlayout {

enum class PatternKind : uint8_t { Twist, Rainbow, Diamond, ThickTwist, ThickRainbow };

std::string_view to_string(PatternKind kind);

// A tagged edge subset. For Diamond, groups[i][j] is the element e_{i,j}:
// each group is an increasing chain, and the j-th elements of successive
// groups decrease. For thick patterns each group is one sub-rainbow
// (ThickTwist) or sub-twist (ThickRainbow). Twists and rainbows carry one
// group per edge.
struct PatternWitness {
  PatternKind kind = PatternKind::Twist;
  int k = 0;
  int t = 1;
  std::vector<EdgeId> edges;
  std::vector<std::vector<EdgeId>> groups;
};

// Sets edges from groups (sorted) and k from the group count.
PatternWitness make_witness(PatternKind kind, int t, std::vector<std::vector<EdgeId>> groups);

// Independent pairwise re-check of the defining relations.
bool check_witness(const OrderedGraph& g, const PatternWitness& w);

// {"kind":..,"k":..,"t":..,"groups":[[..],..]}
std::string witness_to_json(const PatternWitness& w);
// Inverse of witness_to_json; k is recomputed from the groups. Throws
// SyntaxError.
PatternWitness witness_from_json(std::string_view text);

// Longest chain of the strict nesting order.
PatternWitness largest_rainbow(const OrderedGraph& g);
// Maximum clique of the crossing relation; separated matchings use LIS.
PatternWitness largest_twist(const OrderedGraph& g, uint64_t budget = 50'000'000);

// Grid views: LIS / LDS of pi, as edge ids of M.to_graph().
PatternWitness longest_increasing(const GridMatching& m);
PatternWitness longest_decreasing(const GridMatching& m);

// Grid-level check of the two adjacency conditions of a labeling.
bool is_diamond(const GridMatching& m, const std::vector<std::vector<EdgeId>>& labeling);

// exact=false: the witness of side = Ferrers square (always exists, may
// be smaller than the true maximum). exact=true: maximum side by
// backtracking; throws SizeLimit past `budget` nodes.
PatternWitness largest_diamond(const GridMatching& m, bool exact, uint64_t budget = 50'000'000);

struct ThickResult {
  PatternWitness twist;    // ThickTwist, groups are t-rainbows
  PatternWitness rainbow;  // ThickRainbow, groups are t-twists
  int k() const { return twist.k > rainbow.k ? twist.k : rainbow.k; }
};

// Largest k with a t-thick k-twist and largest with a t-thick k-rainbow.
// Throws SizeLimit when the group enumeration or the clique search runs
// past `budget`.
ThickResult largest_thick(const OrderedGraph& g, int t, uint64_t budget = 5'000'000);

// Largest k such that g contains a k-thick k-twist or k-rainbow.
PatternWitness largest_thick_pattern(const OrderedGraph& g, uint64_t budget = 5'000'000);

// Recursive quadrant subdivision of a diamond followed by a monotone
// subsequence over the leaf squares. Returns the best thick pattern found
// (target thickness and length k). Throws InsufficientInput if a round
// finds no opposite quadrant pair holding a quarter of the points each.
PatternWitness thick_from_diamond(const GridMatching& m, int k);
// Same, starting from a known diamond labeling of m.
PatternWitness thick_from_diamond(const GridMatching& m, int k,
                                  const std::vector<std::vector<EdgeId>>& labeling);

}  // namespace mixedlayout
