#include "mixedlayout/io.hpp"

#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <vector>

#include "mixedlayout/error.hpp"

namespace mixedlayout {

namespace {

struct Line {
  int number;
  std::string text;
};

// Non-empty, comment-stripped lines.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string line(text.substr(pos, end - pos));
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back({number, line});
    pos = end + 1;
  }
  return out;
}

std::vector<long long> parse_ints(const Line& line, size_t expected) {
  std::istringstream in(line.text);
  std::vector<long long> vals;
  long long v;
  while (in >> v) vals.push_back(v);
  in.clear();
  std::string rest;
  if (in >> rest)
    throw Error(ErrorCode::SyntaxError, "unexpected token '" + rest + "'", line.number);
  if (expected && vals.size() != expected)
    throw Error(ErrorCode::SyntaxError,
                "expected " + std::to_string(expected) + " integers, got " + std::to_string(vals.size()),
                line.number);
  return vals;
}

}  // namespace

OrderedGraph parse_graph(std::string_view text, bool multi) {
  auto lines = content_lines(text);
  if (lines.empty()) throw Error(ErrorCode::SyntaxError, "empty input", 1);
  auto header = parse_ints(lines[0], 2);
  if (header[0] < 0 || header[1] < 0)
    throw Error(ErrorCode::SyntaxError, "negative header value", lines[0].number);
  const auto m = static_cast<size_t>(header[1]);
  if (lines.size() - 1 != m)
    throw Error(ErrorCode::SyntaxError,
                "header declares " + std::to_string(m) + " edges, found " + std::to_string(lines.size() - 1),
                lines.back().number);
  std::vector<Edge> edges;
  for (size_t i = 1; i < lines.size(); ++i) {
    auto uv = parse_ints(lines[i], 2);
    if (uv[0] < 0 || uv[1] < 0 || uv[0] >= header[0] || uv[1] >= header[0])
      throw Error(ErrorCode::SyntaxError, "endpoint out of range", lines[i].number);
    edges.push_back({static_cast<int>(uv[0]), static_cast<int>(uv[1])});
  }
  try {
    return build_graph(static_cast<int>(header[0]), std::move(edges), multi);
  } catch (const Error& e) {
    throw Error(ErrorCode::SyntaxError, e.what(), lines[0].number);
  }
}

std::vector<OrderedGraph> parse_graph_stream(std::string_view text) {
  auto lines = content_lines(text);
  std::vector<OrderedGraph> out;
  size_t i = 0;
  while (i < lines.size()) {
    auto header = parse_ints(lines[i], 2);
    if (header[0] < 0 || header[1] < 0)
      throw Error(ErrorCode::SyntaxError, "negative header value", lines[i].number);
    const auto m = static_cast<size_t>(header[1]);
    if (i + 1 + m > lines.size())
      throw Error(ErrorCode::SyntaxError, "record truncated", lines.back().number);
    std::vector<Edge> edges;
    for (size_t j = i + 1; j <= i + m; ++j) {
      auto uv = parse_ints(lines[j], 2);
      if (uv[0] < 0 || uv[1] < 0 || uv[0] >= header[0] || uv[1] >= header[0])
        throw Error(ErrorCode::SyntaxError, "endpoint out of range", lines[j].number);
      edges.push_back({static_cast<int>(uv[0]), static_cast<int>(uv[1])});
    }
    try {
      out.push_back(build_graph(static_cast<int>(header[0]), std::move(edges)));
    } catch (const Error& e) {
      throw Error(ErrorCode::SyntaxError, e.what(), lines[i].number);
    }
    i += 1 + m;
  }
  return out;
}

std::string serialize_graph(const OrderedGraph& g) {
  std::string out = std::to_string(g.num_vertices()) + " " + std::to_string(g.num_edges()) + "\n";
  for (const auto& e : g.edges()) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

GridMatching parse_perm(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.size() != 1) throw Error(ErrorCode::SyntaxError, "expected a single 'perm:' line", 1);
  const auto& line = lines[0];
  auto start = line.text.find_first_not_of(" \t");
  if (line.text.compare(start, 5, "perm:") != 0)
    throw Error(ErrorCode::SyntaxError, "missing 'perm:' prefix", line.number);
  auto vals = parse_ints({line.number, line.text.substr(start + 5)}, 0);
  std::vector<int> pi(vals.begin(), vals.end());
  try {
    return GridMatching(std::move(pi));
  } catch (const Error& e) {
    throw Error(ErrorCode::SyntaxError, e.what(), line.number);
  }
}

std::string serialize_perm(const GridMatching& m) {
  std::string out = "perm:";
  for (int r : m.pi()) out += " " + std::to_string(r);
  return out + "\n";
}

OrderedGraph parse_any_graph(std::string_view text) {
  auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string_view::npos && text.substr(start, 5) == "perm:")
    return parse_perm(text).to_graph();
  return parse_graph(text);
}

std::string assignment_to_json(const PageAssignment& a) {
  nlohmann::ordered_json j;
  j["spec"] = nlohmann::ordered_json::array();
  for (auto k : a.spec.kinds) j["spec"].push_back(k == PageKind::Stack ? "S" : "Q");
  j["pages"] = a.page_of;
  return j.dump();
}

PageAssignment assignment_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, e.what());
  }
  if (!j.is_object() || !j.contains("spec") || !j.contains("pages"))
    throw Error(ErrorCode::SyntaxError, "assignment needs \"spec\" and \"pages\"");
  PageAssignment a;
  try {
    for (const auto& k : j.at("spec")) a.spec.kinds.push_back(PageSpec::parse(k.get<std::string>()).kinds.at(0));
    a.page_of = j.at("pages").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SyntaxError, e.what());
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::SyntaxError, "empty page kind");
  } catch (const Error& e) {
    throw Error(ErrorCode::SyntaxError, e.what());
  }
  return a;
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

}  // namespace mixedlayout
