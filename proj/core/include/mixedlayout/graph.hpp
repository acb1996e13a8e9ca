#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixedlayout/bitset.hpp"

namespace mixedlayout {

using Vertex = int;
using EdgeId = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// A graph whose vertices 0..n-1 are listed in layout order; the index is
// the order. Edges are stored normalized (u < v) and sorted, so an EdgeId
// is stable for a given graph value.
class OrderedGraph {
 public:
  OrderedGraph() = default;

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  // Parallel edges are only permitted on multigraphs (quotients).
  bool multi() const { return multi_; }

  int degree(Vertex x) const;
  int max_degree() const;
  bool is_matching() const;

  OrderedGraph without_edge(EdgeId e) const;
  // Same vertex set, only the listed edges (in increasing id order).
  OrderedGraph edge_subgraph(std::span<const EdgeId> ids) const;

  friend bool operator==(const OrderedGraph&, const OrderedGraph&) = default;

 private:
  friend OrderedGraph build_graph(int n, std::vector<Edge> edges, bool multi);
  int n_ = 0;
  std::vector<Edge> edges_;
  bool multi_ = false;
};

// Normalizes each pair to u < v and sorts the edge list.
// Throws OutOfRange, SelfLoop, DuplicateEdge (unless multi).
OrderedGraph build_graph(int n, std::vector<Edge> edges, bool multi = false);

enum class Relation : uint8_t { Cross, Nest, SharedEndpoint, Disjoint };

struct EdgeRelation {
  Relation kind = Relation::Disjoint;
  EdgeId outer = -1;  // set for Nest only
  EdgeId inner = -1;
};

Relation relation(const Edge& a, const Edge& b);
EdgeRelation classify_pair(const OrderedGraph& g, EdgeId e1, EdgeId e2);

// Per-edge bitsets of crossing and nesting partners.
struct ConflictTable {
  explicit ConflictTable(const OrderedGraph& g);
  std::vector<DynBitset> cross;
  std::vector<DynBitset> nest;
};

enum class PageKind : uint8_t { Stack, Queue };

struct PageSpec {
  std::vector<PageKind> kinds;

  static PageSpec split(int stacks, int queues);
  // "SSQ" -> {Stack, Stack, Queue}; throws InvalidInput on other letters.
  static PageSpec parse(std::string_view letters);

  int size() const { return static_cast<int>(kinds.size()); }
  int stacks() const;
  int queues() const;
  std::string str() const;

  friend bool operator==(const PageSpec&, const PageSpec&) = default;
};

struct PageAssignment {
  PageSpec spec;
  std::vector<int> page_of;  // indexed by EdgeId

  int num_pages() const { return spec.size(); }
  // Removes pages that hold no edge and renumbers the rest in order.
  PageAssignment compacted() const;

  friend bool operator==(const PageAssignment&, const PageAssignment&) = default;
};

struct Violation {
  EdgeId first = -1;
  EdgeId second = -1;
  int page = -1;
  friend bool operator==(const Violation&, const Violation&) = default;
};

// Empty iff no stack holds a crossing pair and no queue holds a nesting
// pair. Throws CoverageMismatch if the assignment does not cover g.
std::vector<Violation> validate_assignment(const OrderedGraph& g, const PageAssignment& a);
bool is_valid_assignment(const OrderedGraph& g, const PageAssignment& a);

// Permutation view of a separated matching: pi[c] is the 1-based row of
// the point in 0-based column c. Column c is the edge with the c-th left
// endpoint, which is also EdgeId c of to_graph().
class GridMatching {
 public:
  GridMatching() = default;
  // Throws InvalidInput unless pi is a permutation of 1..m.
  explicit GridMatching(std::vector<int> pi);

  int size() const { return static_cast<int>(pi_.size()); }
  const std::vector<int>& pi() const { return pi_; }
  int row(int column) const { return pi_.at(column); }

  // Left endpoints 0..m-1, right endpoints m..2m-1.
  OrderedGraph to_graph() const;

  // Grid relations: x and y both increase / x increases and y decreases.
  bool increasing(int c1, int c2) const { return c1 < c2 && pi_[c1] < pi_[c2]; }
  bool decreasing(int c1, int c2) const { return c1 < c2 && pi_[c1] > pi_[c2]; }

  friend bool operator==(const GridMatching&, const GridMatching&) = default;

 private:
  std::vector<int> pi_;
};

// Position c with every edge satisfying u < c <= v; 0 for edgeless graphs.
// Throws NotSeparated.
int separation_cut(const OrderedGraph& g);
bool is_separated(const OrderedGraph& g);

// Throws NotMatching, NotSeparated.
GridMatching to_grid(const OrderedGraph& g);

// Drops isolated vertices and re-indexes the rest in order.
OrderedGraph canonicalize_pattern(const OrderedGraph& g);

}  // namespace mixedlayout
