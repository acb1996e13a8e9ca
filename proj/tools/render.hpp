#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixedlayout/graph.hpp"
#include "mixedlayout/greene.hpp"
#include "mixedlayout/patterns.hpp"

namespace mixedlayout::render {

// One text row per grid row, top row m first. Column c of the row pi[c]
// holds '#', or '@' when edge c is highlighted; all other cells are '.'.
std::string grid_text(const GridMatching& m, const std::vector<EdgeId>& highlight = {});
// Inverse of grid_text; '#' and '@' both count as marks. Throws
// SyntaxError unless every row and column has exactly one mark.
GridMatching parse_grid_text(std::string_view text);

std::string grid_svg(const GridMatching& m, const std::vector<EdgeId>& highlight = {});

// Vertices on a horizontal line, edges as upper semicircles. With an
// assignment each page gets its own color; stacks are solid and queues
// dashed.
std::string arcs_svg(const OrderedGraph& g, const std::optional<PageAssignment>& a = std::nullopt);

// Rows of '#' followed by the chain and antichain coverage tables.
std::string ferrers_text(const FerrersDiagram& d);

}  // namespace mixedlayout::render
