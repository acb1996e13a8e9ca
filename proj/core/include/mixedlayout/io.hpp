#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mixedlayout/graph.hpp"

namespace mixedlayout {

// .olg text: "n m" then m lines "u v". Blank lines and '#' comments are
// skipped. Throws SyntaxError carrying the 1-based line.
OrderedGraph parse_graph(std::string_view text, bool multi = false);
std::string serialize_graph(const OrderedGraph& g);
// Concatenated .olg records; each header says how many lines follow.
std::vector<OrderedGraph> parse_graph_stream(std::string_view text);

// "perm: p1 p2 ... pm", values 1-based.
GridMatching parse_perm(std::string_view text);
std::string serialize_perm(const GridMatching& m);

// Either format, chosen by the "perm:" prefix; permutations come back as
// their separated matching.
OrderedGraph parse_any_graph(std::string_view text);

// {"spec":["S","Q",...],"pages":[p_e0,...]}
std::string assignment_to_json(const PageAssignment& a);
PageAssignment assignment_from_json(std::string_view text);

std::string read_input(const std::string& path);  // "-" is stdin

}  // namespace mixedlayout
