#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mixedlayout/graph.hpp"
#include "mixedlayout/solver.hpp"

namespace mixedlayout {

enum class EnumShape { Matchings, SeparatedGraphs };

struct EnumFamily {
  EnumShape shape = EnumShape::Matchings;
  int min_edges = 1;
  int max_edges = 1;
  int max_rows = 0;  // separated only: left side size
  int max_cols = 0;  // separated only: right side size

  // Perfect matchings on 2m points for min_m <= m <= max_m.
  static EnumFamily matchings(int max_m, int min_m = 1);
  // a x b 0-1 matrices, a <= rows, b <= cols, no empty row or column.
  static EnumFamily separated(int rows, int cols, int max_edges, int min_edges = 1);

  bool separated_flag() const { return shape == EnumShape::SeparatedGraphs; }
  // Throws BadParams on non-positive bounds.
  void validate() const;
  // Number of graphs enumerate() will visit.
  uint64_t count() const;
  std::string str() const;
};

// Visits every graph of the family once, in a fixed order: by edge count,
// then shape, then lexicographically. Separated graph with a rows and b
// columns: left vertices 0..a-1, cell (i, j) is the edge (i, a + j).
// Throws BudgetExceeded if count() exceeds budget.
void enumerate(const EnumFamily& family, const std::function<void(const OrderedGraph&)>& visit,
               uint64_t budget = 50'000'000);
std::vector<OrderedGraph> enumerate_all(const EnumFamily& family, uint64_t budget = 5'000'000);

// True if some strictly increasing vertex map sends every edge of h to an
// edge of g. Isolated vertices of h are ignored.
bool contains_pattern(const OrderedGraph& g, const OrderedGraph& h);

struct CriticalSet {
  CriticalMode mode;
  std::vector<OrderedGraph> patterns;  // canonical, sorted
  EnumFamily complete_up_to;
  uint64_t candidates = 0;  // graphs visited
  uint64_t pruned = 0;      // skipped because they contain a known pattern
  double seconds = 0;

  std::string to_json() const;
};

struct SearchOptions {
  int jobs = 1;
  uint64_t budget = kDefaultBudget;  // per criticality call
  uint64_t max_candidates = 50'000'000;
  bool prune = true;
  // NDJSON, one line per finished shard; existing lines are reused.
  std::string checkpoint_path;
};

// Every critical graph of the family. A graph containing a smaller
// critical pattern is infeasible after deleting an edge outside the
// pattern, so it is skipped without a solver call. Results do not depend
// on jobs or on resuming from a checkpoint.
CriticalSet find_critical(const EnumFamily& family, CriticalMode mode, const SearchOptions& options = {});

// Newline-delimited .olg records plus a manifest
// {parameters, counts, complete_up_to, runtime}.
void write_critical_set(const CriticalSet& set, const std::string& olg_path, const std::string& manifest_path);

std::string mode_str(const CriticalMode& mode);

struct ConjectureReport {
  int max_m = 0;
  CriticalSet one_critical;   // total(1)
  CriticalSet mixed_critical;  // split(1, 1)
  CriticalSet queue_critical;  // split(0, 1)
  bool reverified = false;  // each pattern is critical under a fresh call
  bool antichains = false;  // no pattern contains another

  std::string to_json() const;
};

// Critical matchings up to max_m edges; the counts to compare against are
// 8 for total(1) and 12 for split(1, 1).
ConjectureReport conjecture_report(int max_m, const SearchOptions& options = {});

}  // namespace mixedlayout
