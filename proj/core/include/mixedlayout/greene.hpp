#pragma once

#include <vector>

#include "mixedlayout/graph.hpp"
#include "mixedlayout/patterns.hpp"

namespace mixedlayout {

// Shape of the row-insertion tableau of pi.
std::vector<int> rsk_shape(const GridMatching& m);

std::vector<int> conjugate(const std::vector<int>& partition);

struct FerrersDiagram {
  std::vector<int> rows;  // chain row lengths, weakly decreasing
  std::vector<int> c;     // c[i-1]: max elements covered by i chains
  std::vector<int> a;     // a[i-1]: max elements covered by i antichains
  int w = 0;              // number of rows
  int h = 0;              // number of columns
  int square = 0;         // side of the largest square in the diagram
};

FerrersDiagram ferrers(const GridMatching& m);

enum class FamilyKind { Chains, Antichains };

struct ChainFamily {
  FamilyKind kind = FamilyKind::Chains;
  std::vector<std::vector<EdgeId>> parts;  // each sorted by column
  int covered = 0;
};

// k disjoint chains (or antichains) covering as many elements as possible,
// by min-cost flow on the cover DAG. Empty parts are omitted.
ChainFamily max_family(const GridMatching& m, FamilyKind kind, int k);

// The k x k diamond, k = Ferrers square, at the intersection of a maximum
// chain k-family and a maximum antichain k-family.
PatternWitness diamond_witness(const GridMatching& m);

// k queues from a maximum chain k-family plus k stacks from a maximum
// antichain k-family (k = Ferrers square). Stacks come first; empty pages
// are dropped. Edge ids are those of m.to_graph().
PageAssignment approx_mixed_layout(const GridMatching& m);

}  // namespace mixedlayout
