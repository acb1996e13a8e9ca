#include "render.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <set>
#include <sstream>

#include "mixedlayout/error.hpp"

namespace mixedlayout::render {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
constexpr int kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

}  // namespace

std::string grid_text(const GridMatching& m, const std::vector<EdgeId>& highlight) {
  const std::set<EdgeId> hot(highlight.begin(), highlight.end());
  const int n = m.size();
  std::string out;
  for (int row = n; row >= 1; --row) {
    for (int c = 0; c < n; ++c) out += m.row(c) != row ? '.' : hot.count(c) ? '@' : '#';
    out += '\n';
  }
  return out;
}

GridMatching parse_grid_text(std::string_view text) {
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) rows.push_back(line);
  }
  const int n = static_cast<int>(rows.size());
  std::vector<int> pi(n, 0);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != n)
      throw Error(ErrorCode::SyntaxError, "grid row has " + std::to_string(rows[r].size()) + " cells", r + 1);
    int marks = 0;
    for (int c = 0; c < n; ++c) {
      const char ch = rows[r][c];
      if (ch == '.') continue;
      if (ch != '#' && ch != '@') throw Error(ErrorCode::SyntaxError, std::string("unexpected '") + ch + "'", r + 1);
      if (pi[c] != 0) throw Error(ErrorCode::SyntaxError, "column " + std::to_string(c) + " has two marks", r + 1);
      pi[c] = n - r;
      ++marks;
    }
    if (marks != 1) throw Error(ErrorCode::SyntaxError, "row needs exactly one mark", r + 1);
  }
  return GridMatching(std::move(pi));
}

std::string grid_svg(const GridMatching& m, const std::vector<EdgeId>& highlight) {
  const std::set<EdgeId> hot(highlight.begin(), highlight.end());
  const int n = m.size();
  const int cell = 20;
  const int side = std::max(1, n) * cell;
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n", side + 2);
  out += fmt::format("<rect x=\"1\" y=\"1\" width=\"{0}\" height=\"{0}\" fill=\"white\" stroke=\"#999\"/>\n", side);
  for (int i = 1; i < n; ++i) {
    out += fmt::format("<line x1=\"{0}\" y1=\"1\" x2=\"{0}\" y2=\"{1}\" stroke=\"#eee\"/>\n", 1 + i * cell, 1 + side);
    out += fmt::format("<line x1=\"1\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"#eee\"/>\n", 1 + i * cell, 1 + side);
  }
  for (int c = 0; c < n; ++c) {
    const int x = 1 + c * cell + cell / 2;
    const int y = 1 + (n - m.row(c)) * cell + cell / 2;
    out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n", x, y, hot.count(c) ? 7 : 5,
                       hot.count(c) ? "#d62728" : "black");
  }
  return out + "</svg>\n";
}

std::string arcs_svg(const OrderedGraph& g, const std::optional<PageAssignment>& a) {
  const int step = 30;
  const int margin = 20;
  const int n = g.num_vertices();
  int widest = 0;
  for (const auto& e : g.edges()) widest = std::max(widest, e.v - e.u);
  const int width = 2 * margin + std::max(0, n - 1) * step;
  const int base = margin + widest * step / 2;
  const int height = base + margin;
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n", width,
      height);
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const auto& e = g.edge(id);
    const int x1 = margin + e.u * step;
    const int x2 = margin + e.v * step;
    const int r = (x2 - x1) / 2;
    std::string color = "black";
    std::string dash;
    if (a) {
      const int page = a->page_of.at(id);
      color = kPalette[page % kPaletteSize];
      if (a->spec.kinds.at(page) == PageKind::Queue) dash = " stroke-dasharray=\"5,3\"";
    }
    out += fmt::format("<path d=\"M {} {} A {} {} 0 0 1 {} {}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"{}/>\n",
                       x1, base, r, r, x2, base, color, dash);
  }
  for (int v = 0; v < n; ++v) out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"black\"/>\n", margin + v * step, base);
  return out + "</svg>\n";
}

std::string ferrers_text(const FerrersDiagram& d) {
  std::string out;
  for (int len : d.rows) out += std::string(len, '#') + '\n';
  auto table = [](const char* name, const std::vector<int>& vals) {
    std::string s = name;
    for (int v : vals) s += " " + std::to_string(v);
    return s + '\n';
  };
  out += table("c:", d.c);
  out += table("a:", d.a);
  out += "square: " + std::to_string(d.square) + '\n';
  return out;
}

}  // namespace mixedlayout::render
