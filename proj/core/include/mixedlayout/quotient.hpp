#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixedlayout/graph.hpp"
#include "mixedlayout/patterns.hpp"

namespace mixedlayout {

// Consecutive vertex blocks: block j is [starts[j], starts[j+1]), the last
// one ending at num_vertices.
struct IntervalPartition {
  int num_vertices = 0;
  std::vector<Vertex> starts;

  int num_blocks() const { return static_cast<int>(starts.size()); }
  Vertex begin(int block) const { return starts.at(block); }
  Vertex end(int block) const { return block + 1 < num_blocks() ? starts[block + 1] : num_vertices; }
  int block_of(Vertex v) const;

  static IntervalPartition singletons(int n);
  static IntervalPartition whole(int n);
  // Throws InvalidInput unless starts is 0, strictly increasing, < n.
  static IntervalPartition from_starts(int n, std::vector<Vertex> starts);

  friend bool operator==(const IntervalPartition&, const IntervalPartition&) = default;
};

// Greedy left-to-right scan: each block is the shortest prefix of the
// remaining vertices that induces a (k+1)-twist; the last block may have
// none. No block induces a (k+2)-twist.
IntervalPartition interval_partition_by_twists(const OrderedGraph& g, int k, uint64_t budget = 5'000'000);

struct Quotient {
  OrderedGraph graph;         // multi flag set, one vertex per block
  std::vector<EdgeId> lift;   // quotient edge id -> edge id in g
  std::vector<EdgeId> intra;  // edges of g inside a single block
};

Quotient quotient_graph(const OrderedGraph& g, const IntervalPartition& parts);

// Edges of g with both endpoints in the block.
std::vector<EdgeId> block_edges(const OrderedGraph& g, const IntervalPartition& parts, int block);

struct Star {
  Vertex center = 0;
  std::vector<EdgeId> edges;  // parallel edges to one leaf all belong here
};

struct StarForest {
  bool center_right = true;  // every center lies right of all its leaves
  std::vector<Star> stars;
};

// Splits one valid page into one-sided star forests along a 2-degenerate
// elimination order. At most six forests for any valid stack or queue.
// Throws InvalidPage if the edges do not form a valid page of that kind.
std::vector<StarForest> star_forests(const OrderedGraph& g, const std::vector<EdgeId>& page, PageKind kind);

// True if the forests partition `page` and each is a one-sided star forest.
bool check_star_forests(const OrderedGraph& g, const std::vector<EdgeId>& page, const std::vector<StarForest>& forests);

// Stack pages for `edges`: exact stack number when the search finishes
// within budget, otherwise first-fit by left endpoint.
std::vector<std::vector<EdgeId>> stack_cover(const OrderedGraph& g, const std::vector<EdgeId>& edges,
                                             uint64_t budget = 200'000);

struct TransferReport {
  int pages_used = 0;
  int ell = 0;       // nonempty pages of the quotient layout
  int ell_stacks = 0;
  int ell_queues = 0;
  int m_intra = 0;   // largest page count of an interval layout
  int intra_pages = 0;
  int max_forests = 0;
  int alpha_max = 0;  // largest per-star separated layout
  int max_cover_L = 0;   // stacks for the k leftmost edges per star
  int max_queues_rest = 0;  // queues for Q - L
  int max_queues_B = 0;  // queues for the k bottommost edges per star
  int max_cover_rest = 0;  // stacks for S - B
  double bound = 0;          // 6 l 2k^7 (1 + 14(k+1) log(k+1) + k) + 2m
  double bound_stack_branch = 0;  // same with 14 k log k for stack pages
  double bound_queue_branch = 0;  // 14(k+1) log(k+1) for queue pages
  bool within_bound = false;

  std::string to_json() const;
};

struct TransferResult {
  PageAssignment assignment;
  TransferReport report;
};

// Lifts a valid layout of quotient_graph(g, parts).graph to g. Works on
// any ordered (multi)graph; the page bound is only meaningful when g is a
// matching without a (k+1)-thick pattern. Output is always valid. Throws
// InvalidInput if layout_h does not fit the quotient.
TransferResult transfer_layout(const OrderedGraph& g, const IntervalPartition& parts, const PageAssignment& layout_h,
                               int k, uint64_t budget = 200'000);

struct QuotientLevel {
  IntervalPartition parts;
  TransferReport report;
};

struct IteratedLayout {
  PageAssignment assignment;
  std::vector<QuotientLevel> levels;  // levels[i] maps H_{i+1} onto H_{i+2}
  int top_pages = 0;
};

// H_1 = g; H_{i+1} = H_i / partition while H_i has a (k+1)-twist. At most
// k graphs H_1..H_k are allowed; needing H_{k+1} throws DepthExceeded and
// `witness` (if given) receives a k-thick k-rainbow of g built from the
// nested twists.
IteratedLayout iterated_quotient_layout(const OrderedGraph& g, int k, uint64_t budget = 200'000,
                                        PatternWitness* witness = nullptr);

// Proper edge coloring as a list of matchings (edge ids). Misra-Gries with
// at most max_degree + 1 colors on simple graphs; greedy on multigraphs.
std::vector<std::vector<EdgeId>> edge_color(const OrderedGraph& g);

// Colors the edges, lays out each matching by iterated quotients and puts
// every matching on its own pages.
PageAssignment bounded_degree_layout(const OrderedGraph& g, int k, uint64_t budget = 200'000);

}  // namespace mixedlayout
