#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>

#include "mixedlayout/constructions.hpp"
#include "mixedlayout/enumeration.hpp"
#include "mixedlayout/error.hpp"
#include "mixedlayout/greene.hpp"
#include "mixedlayout/io.hpp"
#include "mixedlayout/patterns.hpp"
#include "mixedlayout/quotient.hpp"
#include "mixedlayout/solver.hpp"
#include "render.hpp"

using namespace mixedlayout;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kNo = 1, kUnknown = 2 };

struct Globals {
  bool json = false;
  uint64_t seed = 0;
  int jobs = 1;
  uint64_t budget = kDefaultBudget;
};

json graph_json(const OrderedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.num_vertices()}, {"edges", edges}};
}

json assignment_json(const PageAssignment& a) { return json::parse(assignment_to_json(a)); }

OrderedGraph load_graph(const std::string& path) { return parse_any_graph(read_input(path)); }

GridMatching load_grid(const std::string& path) { return to_grid(load_graph(path)); }

void emit(const Globals& gl, const json& j, const std::string& text) {
  if (gl.json)
    std::cout << j.dump() << '\n';
  else
    std::cout << text;
}

std::string pages_text(const PageAssignment& a) {
  std::string s = "spec " + a.spec.str() + "\npages";
  for (int p : a.page_of) s += " " + std::to_string(p);
  return s + "\n";
}

CriticalMode mode_from(int k, int s, int q) {
  if (k >= 0) return CriticalMode::total(k);
  if (s < 0 || q < 0) throw Error(ErrorCode::BadParams, "give --k or both --s and --q");
  return CriticalMode::split(s, q);
}

// solve --------------------------------------------------------------------

struct SolveArgs {
  std::string input;
  std::string spec;
  bool mn = false;
  bool stack = false;
  bool queue = false;
};

int run_solve(const Globals& gl, const SolveArgs& a) {
  const auto g = load_graph(a.input);
  if (!a.spec.empty()) {
    const auto spec = PageSpec::parse(a.spec);
    auto r = feasible(g, spec, gl.budget);
    json j{{"spec", spec.str()}, {"feasible", r.feasible}, {"unknown", r.budget_hit}, {"nodes", r.nodes}};
    std::string text = r.feasible ? "feasible\n" : r.budget_hit ? "unknown (budget)\n" : "infeasible\n";
    if (r.assignment) {
      j["assignment"] = assignment_json(*r.assignment);
      text += pages_text(*r.assignment);
    }
    emit(gl, j, text);
    return r.feasible ? kOk : r.budget_hit ? kUnknown : kNo;
  }
  PageNumber pn;
  std::string what = "mn";
  if (a.stack) {
    pn = stack_number(g, gl.budget);
    what = "sn";
  } else if (a.queue) {
    pn = queue_number(g);
    what = "qn";
  } else {
    pn = mixed_page_number(g, gl.budget);
  }
  emit(gl, {{what, pn.k}, {"nodes", pn.nodes}, {"assignment", assignment_json(pn.assignment)}},
       what + " " + std::to_string(pn.k) + "\n" + pages_text(pn.assignment));
  return kOk;
}

// critical -----------------------------------------------------------------

int run_critical(const Globals& gl, const std::string& input, int k, int s, int q) {
  const auto g = load_graph(input);
  const auto mode = mode_from(k, s, q);
  const auto v = criticality(g, mode, gl.budget);
  emit(gl,
       {{"mode", mode_str(mode)},
        {"critical", v.critical},
        {"infeasible", v.infeasible},
        {"blocking_edge", v.blocking_edge},
        {"nodes", v.nodes}},
       std::string(v.critical ? "critical" : "not critical") + " at " + mode_str(mode) +
           (v.infeasible ? "" : " (feasible)") +
           (v.blocking_edge >= 0 ? " (deleting edge " + std::to_string(v.blocking_edge) + " stays infeasible)" : "") +
           "\n");
  return v.critical ? kOk : kNo;
}

// detect -------------------------------------------------------------------

std::string witness_text(const PatternWitness& w) {
  std::string s = std::string(to_string(w.kind)) + " k=" + std::to_string(w.k);
  if (w.kind != PatternKind::Twist && w.kind != PatternKind::Rainbow) s += " t=" + std::to_string(w.t);
  s += ":";
  for (const auto& grp : w.groups) {
    s += " [";
    for (size_t i = 0; i < grp.size(); ++i) s += (i ? " " : "") + std::to_string(grp[i]);
    s += "]";
  }
  return s + "\n";
}

int run_detect(const Globals& gl, const std::string& input, const std::string& pattern, int t, bool exact) {
  const auto g = load_graph(input);
  std::vector<PatternWitness> found;
  const bool all = pattern == "all";
  if (all || pattern == "twist") found.push_back(largest_twist(g, gl.budget));
  if (all || pattern == "rainbow") found.push_back(largest_rainbow(g));
  if ((all && g.is_matching() && is_separated(g)) || pattern == "diamond") {
    const auto m = to_grid(g);
    found.push_back(exact ? largest_diamond(m, true, gl.budget) : diamond_witness(m));
  }
  if (all || pattern == "thick") {
    if (t > 0) {
      auto r = largest_thick(g, t);
      found.push_back(r.twist);
      found.push_back(r.rainbow);
    } else {
      found.push_back(largest_thick_pattern(g));
    }
  }
  if (found.empty()) throw Error(ErrorCode::BadParams, "unknown pattern '" + pattern + "'");
  json j = json::array();
  std::string text;
  for (const auto& w : found) {
    j.push_back(json::parse(witness_to_json(w)));
    text += witness_text(w);
  }
  emit(gl, j, text);
  return kOk;
}

// ferrers / approx -----------------------------------------------------------

int run_ferrers(const Globals& gl, const std::string& input) {
  const auto d = ferrers(load_grid(input));
  emit(gl, {{"rows", d.rows}, {"c", d.c}, {"a", d.a}, {"square", d.square}}, render::ferrers_text(d));
  return kOk;
}

int run_approx(const Globals& gl, const std::string& input) {
  const auto m = load_grid(input);
  const auto d = ferrers(m);
  const auto a = approx_mixed_layout(m);
  const bool ok = is_valid_assignment(m.to_graph(), a);
  emit(gl, {{"square", d.square}, {"pages", a.num_pages()}, {"valid", ok}, {"assignment", assignment_json(a)}},
       "square " + std::to_string(d.square) + ", " + std::to_string(a.num_pages()) + " pages\n" + pages_text(a));
  return ok ? kOk : kNo;
}

// gen ----------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::string family = "stack";
  std::string format;
  int k = 2, t = -1, r = 4, n = -1, s = 2, q = 1, m = 8;
};

int run_gen(const Globals& gl, const GenArgs& a) {
  std::optional<GridMatching> grid;
  OrderedGraph g;
  const int t = a.t > 0 ? a.t : a.k;
  if (a.kind == "diamond") grid = gen_diamond(a.k);
  else if (a.kind == "twist") grid = gen_pattern(PatternKind::Twist, a.k);
  else if (a.kind == "rainbow") grid = gen_pattern(PatternKind::Rainbow, a.k);
  else if (a.kind == "thick-twist") grid = gen_thick_twist(t, a.k);
  else if (a.kind == "thick-rainbow") grid = gen_thick_rainbow(t, a.k);
  else if (a.kind == "tight2k") grid = gen_tight_2k(a.k);
  else if (a.kind == "subdivision") grid = gen_alternating_subdivision(a.k);
  else if (a.kind == "random-matching") g = gen_random_matching(a.m, gl.seed);
  else if (a.kind == "random-graph") g = gen_random_graph(a.n > 0 ? a.n : 2 * a.m, a.m, gl.seed);
  else if (a.kind == "critical") {
    if (a.family == "stack") g = gen_stack_critical(a.s, a.n > 0 ? a.n : 2 * a.s + 1);
    else if (a.family == "2") g = gen_2critical(a.r);
    else if (a.family == "k") g = gen_k_critical(a.k, a.n > 0 ? a.n : 2 * (a.r + 2) + 6);
    else if (a.family == "sq") g = gen_sq_critical(a.s, a.q, a.n > 0 ? a.n : 2 * a.s + 1);
    else throw Error(ErrorCode::BadParams, "unknown critical family '" + a.family + "'");
  } else {
    throw Error(ErrorCode::BadParams, "unknown generator '" + a.kind + "'");
  }
  if (grid) g = grid->to_graph();
  const bool perm = a.format == "perm" || (a.format.empty() && grid);
  if (perm && !grid) grid = to_grid(g);
  json j{{"graph", graph_json(g)}};
  if (grid) j["perm"] = grid->pi();
  emit(gl, j, perm ? serialize_perm(*grid) : serialize_graph(g));
  return kOk;
}

// layout -------------------------------------------------------------------

int run_layout(const Globals& gl, const std::string& input, int k, bool via_quotient, bool bounded_degree) {
  const auto g = load_graph(input);
  json j;
  std::string text;
  PageAssignment a;
  if (via_quotient) {
    PatternWitness w;
    IteratedLayout res;
    try {
      res = iterated_quotient_layout(g, k, gl.budget, &w);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DepthExceeded) throw;
      emit(gl, {{"depth_exceeded", true}, {"witness", json::parse(witness_to_json(w))}},
           std::string(e.what()) + "\nwitness " + witness_text(w));
      return kNo;
    }
    a = res.assignment;
    j["levels"] = json::array();
    for (size_t i = 0; i < res.levels.size(); ++i) {
      const auto& lv = res.levels[i];
      j["levels"].push_back({{"blocks", lv.parts.num_blocks()}, {"report", json::parse(lv.report.to_json())}});
      text += "level " + std::to_string(i + 1) + ": " + std::to_string(lv.parts.num_blocks()) + " blocks, " +
              lv.report.to_json() + "\n";
    }
    j["top_pages"] = res.top_pages;
  } else if (bounded_degree) {
    a = bounded_degree_layout(g, k, gl.budget);
  } else {
    a = mixed_page_number(g, gl.budget).assignment;
  }
  const bool ok = is_valid_assignment(g, a);
  j["pages"] = a.num_pages();
  j["valid"] = ok;
  j["assignment"] = assignment_json(a);
  emit(gl, j, text + std::to_string(a.num_pages()) + " pages\n" + pages_text(a));
  return ok ? kOk : kNo;
}

// enumerate-critical ---------------------------------------------------------

struct EnumArgs {
  bool separated = false;
  bool conjecture = false;
  int k = -1, s = -1, q = -1;
  int max_grid = 5;
  int max_edges = 8;
  int max_m = 6;
  std::string out;
  std::string checkpoint;
};

int run_enumerate(const Globals& gl, const EnumArgs& a) {
  SearchOptions opts;
  opts.jobs = gl.jobs;
  opts.budget = gl.budget;
  opts.checkpoint_path = a.checkpoint;
  if (a.conjecture) {
    const auto r = conjecture_report(a.max_m, opts);
    emit(gl, json::parse(r.to_json()),
         "matchings up to " + std::to_string(a.max_m) + " edges\n" + "k=1 critical: " +
             std::to_string(r.one_critical.patterns.size()) + " (compare 8)\n" +
             "(1,1) critical: " + std::to_string(r.mixed_critical.patterns.size()) + " (compare 12)\n" +
             "(0,1) critical: " + std::to_string(r.queue_critical.patterns.size()) + "\n" +
             "reverified: " + (r.reverified ? "yes" : "no") + ", antichains: " + (r.antichains ? "yes" : "no") + "\n");
    return r.reverified && r.antichains ? kOk : kNo;
  }
  const auto family = a.separated ? EnumFamily::separated(a.max_grid, a.max_grid, a.max_edges)
                                  : EnumFamily::matchings(a.max_m, 2);
  const auto set = find_critical(family, mode_from(a.k < 0 && a.s < 0 ? 1 : a.k, a.s, a.q), opts);
  if (!a.out.empty()) write_critical_set(set, a.out + ".olg", a.out + ".json");
  std::string text = std::to_string(set.patterns.size()) + " critical at " + mode_str(set.mode) + " over " +
                     family.str() + " (" + std::to_string(set.candidates) + " candidates, " +
                     std::to_string(set.pruned) + " pruned)\n";
  for (const auto& g : set.patterns) text += serialize_graph(g);
  emit(gl, json::parse(set.to_json()), text);
  return kOk;
}

// render / verify ------------------------------------------------------------

struct RenderArgs {
  std::string input;
  std::string view = "grid";
  bool svg = false;
  bool solve = false;
  std::string assignment;
  std::string witness;
};

int run_render(const Globals& gl, const RenderArgs& a) {
  const auto g = load_graph(a.input);
  std::vector<EdgeId> hot;
  if (!a.witness.empty()) hot = witness_from_json(read_input(a.witness)).edges;
  std::string out;
  if (a.view == "grid") {
    const auto m = to_grid(g);
    out = a.svg ? render::grid_svg(m, hot) : render::grid_text(m, hot);
  } else if (a.view == "arcs") {
    std::optional<PageAssignment> pa;
    if (!a.assignment.empty()) pa = assignment_from_json(read_input(a.assignment));
    else if (a.solve) pa = mixed_page_number(g, gl.budget).assignment;
    if (pa && validate_assignment(g, *pa).size()) std::cerr << "warning: assignment has violations\n";
    out = render::arcs_svg(g, pa);
  } else if (a.view == "ferrers") {
    out = render::ferrers_text(ferrers(to_grid(g)));
  } else {
    throw Error(ErrorCode::BadParams, "unknown view '" + a.view + "'");
  }
  emit(gl, {{"view", a.view}, {a.svg || a.view == "arcs" ? "svg" : "text", out}}, out);
  return kOk;
}

int run_verify(const Globals& gl, const std::string& input, const std::string& assignment, const std::string& witness) {
  const auto g = load_graph(input);
  if (assignment.empty() == witness.empty()) throw Error(ErrorCode::BadParams, "give exactly one of --assignment, --witness");
  if (!witness.empty()) {
    const auto w = witness_from_json(read_input(witness));
    const bool ok = check_witness(g, w);
    emit(gl, {{"valid", ok}, {"kind", to_string(w.kind)}, {"k", w.k}}, ok ? "valid witness\n" : "invalid witness\n");
    return ok ? kOk : kNo;
  }
  const auto a = assignment_from_json(read_input(assignment));
  const auto bad = validate_assignment(g, a);
  json v = json::array();
  std::string text = bad.empty() ? "valid assignment\n" : "";
  for (const auto& x : bad) {
    v.push_back({{"first", x.first}, {"second", x.second}, {"page", x.page}});
    text += "page " + std::to_string(x.page) + ": edges " + std::to_string(x.first) + " and " +
            std::to_string(x.second) + " conflict\n";
  }
  emit(gl, {{"valid", bad.empty()}, {"violations", v}}, text);
  return bad.empty() ? kOk : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stack, queue and mixed linear layouts of ordered graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_flag("--json", gl.json, "Machine-readable output");
  app.add_option("--seed", gl.seed, "Seed for randomized commands")->capture_default_str();
  app.add_option("--jobs", gl.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--budget", gl.budget, "Search node budget")->capture_default_str();

  std::function<int()> action;

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Decide a page spec or compute a page number");
  s->add_option("input", solve.input, "Graph file (.olg or perm), - for stdin")->required();
  auto* spec = s->add_option("--spec", solve.spec, "Page kinds, e.g. SSQ");
  auto* mn = s->add_flag("--mn", solve.mn, "Mixed page number (default)");
  auto* sn = s->add_flag("--stack", solve.stack, "Stack number");
  auto* qn = s->add_flag("--queue", solve.queue, "Queue number");
  spec->excludes(mn, sn, qn);
  sn->excludes(qn, mn);
  qn->excludes(mn);
  s->callback([&] { action = [&] { return run_solve(gl, solve); }; });

  std::string crit_input;
  int crit_k = -1, crit_s = -1, crit_q = -1;
  auto* c = app.add_subcommand("critical", "Check criticality");
  c->add_option("input", crit_input)->required();
  auto* ck = c->add_option("--k", crit_k, "Total page count");
  c->add_option("--s", crit_s, "Stacks")->excludes(ck);
  c->add_option("--q", crit_q, "Queues")->excludes(ck);
  c->callback([&] { action = [&] { return run_critical(gl, crit_input, crit_k, crit_s, crit_q); }; });

  std::string det_input, det_pattern = "all";
  int det_t = 0;
  bool det_exact = false;
  auto* d = app.add_subcommand("detect", "Largest twist, rainbow, diamond or thick pattern");
  d->add_option("input", det_input)->required();
  d->add_option("--pattern", det_pattern)
      ->check(CLI::IsMember({"all", "twist", "rainbow", "diamond", "thick"}))
      ->capture_default_str();
  d->add_option("--t", det_t, "Thickness for thick patterns (default: k-thick k-patterns)");
  d->add_flag("--exact", det_exact, "Exact diamond search instead of the Ferrers square witness");
  d->callback([&] { action = [&] { return run_detect(gl, det_input, det_pattern, det_t, det_exact); }; });

  std::string fer_input;
  auto* f = app.add_subcommand("ferrers", "Ferrers diagram of a separated matching");
  f->add_option("input", fer_input)->required();
  f->callback([&] { action = [&] { return run_ferrers(gl, fer_input); }; });

  std::string apx_input;
  auto* ap = app.add_subcommand("approx", "Layout with at most twice the Ferrers square pages");
  ap->add_option("input", apx_input)->required();
  ap->callback([&] { action = [&] { return run_approx(gl, apx_input); }; });

  GenArgs gen;
  auto* gcmd = app.add_subcommand("gen", "Generate a construction");
  gcmd->add_option("kind", gen.kind)
      ->required()
      ->check(CLI::IsMember({"diamond", "twist", "rainbow", "thick-twist", "thick-rainbow", "tight2k", "subdivision",
                             "critical", "random-matching", "random-graph"}));
  gcmd->add_option("--k", gen.k)->capture_default_str();
  gcmd->add_option("--t", gen.t, "Thickness (default k)");
  gcmd->add_option("--r", gen.r)->capture_default_str();
  gcmd->add_option("--n", gen.n, "Vertices");
  gcmd->add_option("--s", gen.s)->capture_default_str();
  gcmd->add_option("--q", gen.q)->capture_default_str();
  gcmd->add_option("--m", gen.m, "Edges")->capture_default_str();
  gcmd->add_option("--family", gen.family)->check(CLI::IsMember({"stack", "2", "k", "sq"}))->capture_default_str();
  gcmd->add_option("--format", gen.format)->check(CLI::IsMember({"olg", "perm"}));
  gcmd->callback([&] { action = [&] { return run_gen(gl, gen); }; });

  std::string lay_input;
  int lay_k = 1;
  bool lay_quotient = false, lay_degree = false;
  auto* l = app.add_subcommand("layout", "Compute a layout");
  l->add_option("input", lay_input)->required();
  l->add_option("--k", lay_k, "Twist bound for the quotient procedure")->capture_default_str();
  auto* vq = l->add_flag("--via-quotient", lay_quotient, "Iterated interval quotients");
  l->add_flag("--bounded-degree", lay_degree, "Edge coloring, then quotients per matching")->excludes(vq);
  l->callback([&] { action = [&] { return run_layout(gl, lay_input, lay_k, lay_quotient, lay_degree); }; });

  EnumArgs en;
  auto* e = app.add_subcommand("enumerate-critical", "Enumerate critical ordered graphs");
  e->add_flag("--separated", en.separated, "Separated graphs instead of matchings");
  auto* ek = e->add_option("--k", en.k, "Total page count (default 1)");
  e->add_option("--s", en.s)->excludes(ek);
  e->add_option("--q", en.q)->excludes(ek);
  e->add_option("--max-grid", en.max_grid)->capture_default_str();
  e->add_option("--max-edges", en.max_edges)->capture_default_str();
  e->add_option("--max-m", en.max_m, "Largest matching size")->capture_default_str();
  e->add_option("--out", en.out, "Write PREFIX.olg and PREFIX.json");
  e->add_option("--checkpoint", en.checkpoint, "Resumable NDJSON checkpoint");
  e->add_flag("--conjecture", en.conjecture, "Critical matchings report for k=1, (1,1) and (0,1)");
  e->callback([&] { action = [&] { return run_enumerate(gl, en); }; });

  RenderArgs ren;
  auto* r = app.add_subcommand("render", "Draw a grid, arc diagram or Ferrers diagram");
  r->add_option("input", ren.input)->required();
  r->add_option("--view", ren.view)->check(CLI::IsMember({"grid", "arcs", "ferrers"}))->capture_default_str();
  r->add_flag("--svg", ren.svg, "SVG instead of text (grid view)");
  r->add_option("--assignment", ren.assignment, "Assignment JSON for the arc view");
  r->add_flag("--solve", ren.solve, "Color arcs by an optimal mixed layout");
  r->add_option("--witness", ren.witness, "Witness JSON to highlight");
  r->callback([&] { action = [&] { return run_render(gl, ren); }; });

  std::string ver_input, ver_assignment, ver_witness;
  auto* v = app.add_subcommand("verify", "Re-check an assignment or witness");
  v->add_option("input", ver_input)->required();
  v->add_option("--assignment", ver_assignment);
  v->add_option("--witness", ver_witness);
  v->callback([&] { action = [&] { return run_verify(gl, ver_input, ver_assignment, ver_witness); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUnknown;
  }
  try {
    return action();
  } catch (const Error& err) {
    std::cerr << "error: " << err.what();
    if (err.line() > 0) std::cerr << " (line " << err.line() << ")";
    std::cerr << '\n';
    return kUnknown;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUnknown;
  }
}
