#include "mixedlayout/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <exception>
#include <fstream>
#include <json.hpp>
#include <map>
#include <mutex>
#include <thread>

#include "mixedlayout/error.hpp"
#include "mixedlayout/io.hpp"

namespace mixedlayout {

using json = nlohmann::ordered_json;

namespace {

__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;

uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  u128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<uint64_t>(std::min<u128>(r, UINT64_MAX));
}

uint64_t double_factorial_odd(int m) {
  uint64_t r = 1;
  for (int i = 2 * m - 1; i > 1; i -= 2) r *= i;
  return r;
}

// a x b matrices with e ones and no empty row or column.
uint64_t full_matrices(int a, int b, int e) {
  i128 total = 0;
  for (int i = 0; i <= a; ++i)
    for (int j = 0; j <= b; ++j) {
      i128 term = static_cast<i128>(binom(a, i)) * binom(b, j) * binom((a - i) * (b - j), e);
      total += (i + j) % 2 ? -term : term;
    }
  return static_cast<uint64_t>(total);
}

// One unit of parallel work inside an edge-count level.
struct Shard {
  int edges = 0;
  int rows = 0;  // separated
  int cols = 0;
  int first = -1;           // separated: smallest chosen cell
  std::vector<int> prefix;  // matchings: partners of the first points
  std::string key;
};

constexpr int kMatchingPrefix = 2;

void match_rest(std::vector<int>& partner, int remaining, const std::function<void(const std::vector<int>&)>& done) {
  if (remaining == 0) {
    done(partner);
    return;
  }
  const int n = static_cast<int>(partner.size());
  int i = 0;
  while (partner[i] >= 0) ++i;
  for (int j = i + 1; j < n; ++j) {
    if (partner[j] >= 0) continue;
    partner[i] = j;
    partner[j] = i;
    match_rest(partner, remaining - 1, done);
    partner[i] = partner[j] = -1;
  }
}

OrderedGraph matching_graph(const std::vector<int>& partner) {
  std::vector<Edge> edges;
  for (int i = 0; i < static_cast<int>(partner.size()); ++i)
    if (i < partner[i]) edges.push_back({i, partner[i]});
  return build_graph(static_cast<int>(partner.size()), std::move(edges));
}

std::vector<Shard> level_shards(const EnumFamily& f, int e) {
  std::vector<Shard> out;
  if (!f.separated_flag()) {
    // Partner choices of the first kMatchingPrefix points, in the same
    // order the full recursion visits them.
    const int depth = std::min(e, kMatchingPrefix);
    std::vector<int> partner(2 * e, -1);
    std::vector<int> prefix;
    std::function<void(int)> rec = [&](int d) {
      if (d == depth) {
        Shard s;
        s.edges = e;
        s.prefix = prefix;
        s.key = "m" + std::to_string(e);
        for (int p : prefix) s.key += "." + std::to_string(p);
        out.push_back(std::move(s));
        return;
      }
      int i = 0;
      while (partner[i] >= 0) ++i;
      for (int j = i + 1; j < 2 * e; ++j) {
        if (partner[j] >= 0) continue;
        partner[i] = j;
        partner[j] = i;
        prefix.push_back(j);
        rec(d + 1);
        prefix.pop_back();
        partner[i] = partner[j] = -1;
      }
    };
    rec(0);
    return out;
  }
  for (int a = 1; a <= f.max_rows; ++a)
    for (int b = 1; b <= f.max_cols; ++b) {
      if (e < std::max(a, b) || e > a * b) continue;
      for (int first = 0; first + e <= a * b; ++first) {
        // The first cell must lie in row 0, or row 0 stays empty.
        if (first >= b) break;
        Shard s;
        s.edges = e;
        s.rows = a;
        s.cols = b;
        s.first = first;
        s.key = "s" + std::to_string(e) + "." + std::to_string(a) + "x" + std::to_string(b) + "." + std::to_string(first);
        out.push_back(std::move(s));
      }
    }
  return out;
}

void visit_shard(const Shard& s, const std::function<void(const OrderedGraph&)>& visit) {
  if (s.rows == 0) {
    std::vector<int> partner(2 * s.edges, -1);
    for (int p : s.prefix) {
      int i = 0;
      while (partner[i] >= 0) ++i;
      partner[i] = p;
      partner[p] = i;
    }
    match_rest(partner, s.edges - static_cast<int>(s.prefix.size()),
               [&](const std::vector<int>& pt) { visit(matching_graph(pt)); });
    return;
  }
  const int a = s.rows;
  const int b = s.cols;
  const int cells = a * b;
  std::vector<int> chosen{s.first};
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(chosen.size()) == s.edges) {
      uint64_t rows = 0, cols = 0;
      for (int c : chosen) {
        rows |= uint64_t{1} << (c / b);
        cols |= uint64_t{1} << (c % b);
      }
      if (std::popcount(rows) != a || std::popcount(cols) != b) return;
      std::vector<Edge> edges;
      for (int c : chosen) edges.push_back({c / b, a + c % b});
      visit(build_graph(a + b, std::move(edges)));
      return;
    }
    const int need = s.edges - static_cast<int>(chosen.size());
    for (int c = next; c + need <= cells; ++c) {
      chosen.push_back(c);
      rec(c + 1);
      chosen.pop_back();
    }
  };
  rec(s.first + 1);
}

json graph_json(const OrderedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.num_vertices()}, {"edges", edges}};
}

OrderedGraph graph_from_json(const json& j) {
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  return build_graph(j.at("n").get<int>(), std::move(edges));
}

json family_json(const EnumFamily& f) {
  json j{{"shape", f.separated_flag() ? "separated" : "matchings"},
         {"min_edges", f.min_edges},
         {"max_edges", f.max_edges}};
  if (f.separated_flag()) {
    j["max_rows"] = f.max_rows;
    j["max_cols"] = f.max_cols;
  }
  return j;
}

bool graph_less(const OrderedGraph& x, const OrderedGraph& y) {
  if (x.num_edges() != y.num_edges()) return x.num_edges() < y.num_edges();
  if (x.num_vertices() != y.num_vertices()) return x.num_vertices() < y.num_vertices();
  return x.edges() < y.edges();
}

struct ShardResult {
  std::vector<OrderedGraph> patterns;
  uint64_t candidates = 0;
  uint64_t pruned = 0;
};

}  // namespace

EnumFamily EnumFamily::matchings(int max_m, int min_m) {
  EnumFamily f;
  f.shape = EnumShape::Matchings;
  f.min_edges = min_m;
  f.max_edges = max_m;
  return f;
}

EnumFamily EnumFamily::separated(int rows, int cols, int max_edges, int min_edges) {
  EnumFamily f;
  f.shape = EnumShape::SeparatedGraphs;
  f.max_rows = rows;
  f.max_cols = cols;
  f.min_edges = min_edges;
  f.max_edges = max_edges;
  return f;
}

void EnumFamily::validate() const {
  if (min_edges < 1 || max_edges < min_edges) throw Error(ErrorCode::BadParams, "edge bounds must be 1 <= min <= max");
  if (separated_flag()) {
    if (max_rows < 1 || max_cols < 1) throw Error(ErrorCode::BadParams, "grid bounds must be positive");
    if (max_rows * max_cols > 64) throw Error(ErrorCode::BadParams, "grid larger than 64 cells");
  } else if (max_edges > 12) {
    throw Error(ErrorCode::BadParams, "matchings above 12 edges are out of reach");
  }
}

uint64_t EnumFamily::count() const {
  validate();
  uint64_t total = 0;
  for (int e = min_edges; e <= max_edges; ++e) {
    if (!separated_flag()) {
      total += double_factorial_odd(e);
      continue;
    }
    for (int a = 1; a <= max_rows; ++a)
      for (int b = 1; b <= max_cols; ++b) total += full_matrices(a, b, e);
  }
  return total;
}

std::string EnumFamily::str() const {
  std::string s = separated_flag() ? "separated " + std::to_string(max_rows) + "x" + std::to_string(max_cols)
                                   : std::string("matchings");
  return s + " edges " + std::to_string(min_edges) + ".." + std::to_string(max_edges);
}

void enumerate(const EnumFamily& family, const std::function<void(const OrderedGraph&)>& visit, uint64_t budget) {
  if (family.count() > budget)
    throw Error(ErrorCode::BudgetExceeded, family.str() + " has " + std::to_string(family.count()) + " graphs");
  for (int e = family.min_edges; e <= family.max_edges; ++e)
    for (const auto& s : level_shards(family, e)) visit_shard(s, visit);
}

std::vector<OrderedGraph> enumerate_all(const EnumFamily& family, uint64_t budget) {
  std::vector<OrderedGraph> out;
  enumerate(family, [&](const OrderedGraph& g) { out.push_back(g); }, budget);
  return out;
}

bool contains_pattern(const OrderedGraph& g, const OrderedGraph& h_in) {
  const OrderedGraph h = canonicalize_pattern(h_in);
  const int nh = h.num_vertices();
  const int ng = g.num_vertices();
  if (h.num_edges() > g.num_edges() || nh > ng) return false;
  if (h.num_edges() == 0) return true;
  std::vector<DynBitset> adj(ng, DynBitset(ng));
  for (const auto& e : g.edges()) {
    adj[e.u].set(e.v);
    adj[e.v].set(e.u);
  }
  std::vector<std::vector<Vertex>> back(nh);  // earlier neighbours in h
  for (const auto& e : h.edges()) back[e.v].push_back(e.u);
  std::vector<int> deg_h(nh, 0);
  for (const auto& e : h.edges()) ++deg_h[e.u], ++deg_h[e.v];
  std::vector<int> deg_g(ng, 0);
  for (const auto& e : g.edges()) ++deg_g[e.u], ++deg_g[e.v];

  std::vector<Vertex> image(nh, -1);
  std::function<bool(int, Vertex)> place = [&](int x, Vertex from) {
    if (x == nh) return true;
    for (Vertex y = from; y <= ng - (nh - x); ++y) {
      if (deg_g[y] < deg_h[x]) continue;
      bool ok = true;
      for (Vertex w : back[x])
        if (!adj[image[w]].test(y)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      image[x] = y;
      if (place(x + 1, y + 1)) return true;
    }
    return false;
  };
  return place(0, 0);
}

std::string mode_str(const CriticalMode& mode) {
  if (mode.kind == CriticalMode::Kind::Total) return "k=" + std::to_string(mode.k);
  return "(" + std::to_string(mode.s) + "," + std::to_string(mode.q) + ")";
}

std::string CriticalSet::to_json() const {
  json j;
  j["mode"] = mode_str(mode);
  j["complete_up_to"] = family_json(complete_up_to);
  j["count"] = patterns.size();
  j["candidates"] = candidates;
  j["pruned"] = pruned;
  j["seconds"] = seconds;
  j["patterns"] = json::array();
  for (const auto& g : patterns) j["patterns"].push_back(graph_json(g));
  return j.dump();
}

CriticalSet find_critical(const EnumFamily& family, CriticalMode mode, const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  family.validate();
  if (mode.k < 1) throw Error(ErrorCode::BadParams, "criticality needs at least one page");
  if (family.count() > options.max_candidates)
    throw Error(ErrorCode::BudgetExceeded, family.str() + " has " + std::to_string(family.count()) + " graphs");

  const std::string run_id = family.str() + " " + mode_str(mode);
  std::map<std::string, ShardResult> done;
  if (!options.checkpoint_path.empty()) {
    std::ifstream in(options.checkpoint_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::parse_error&) {
        continue;  // a line cut short by an interrupted run
      }
      if (j.value("run", "") != run_id)
        throw Error(ErrorCode::InvalidInput, "checkpoint " + options.checkpoint_path + " belongs to another run");
      ShardResult r;
      for (const auto& p : j.at("patterns")) r.patterns.push_back(graph_from_json(p));
      r.candidates = j.at("candidates").get<uint64_t>();
      r.pruned = j.at("pruned").get<uint64_t>();
      done[j.at("shard").get<std::string>()] = std::move(r);
    }
  }
  std::ofstream checkpoint;
  if (!options.checkpoint_path.empty()) checkpoint.open(options.checkpoint_path, std::ios::app);
  std::mutex mu;

  CriticalSet out;
  out.mode = mode;
  out.complete_up_to = family;
  for (int e = family.min_edges; e <= family.max_edges; ++e) {
    const std::vector<OrderedGraph> known = out.patterns;
    const auto shards = level_shards(family, e);
    std::vector<ShardResult> results(shards.size());
    std::vector<char> have(shards.size(), 0);
    for (size_t i = 0; i < shards.size(); ++i)
      if (auto it = done.find(shards[i].key); it != done.end()) {
        results[i] = it->second;
        have[i] = 1;
      }

    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    auto work = [&] {
      for (size_t i = next++; i < shards.size(); i = next++) {
        if (have[i]) continue;
        {
          std::lock_guard lock(mu);
          if (failure) return;
        }
        ShardResult r;
        try {
          visit_shard(shards[i], [&](const OrderedGraph& g) {
            ++r.candidates;
            if (options.prune)
              for (const auto& h : known)
                if (contains_pattern(g, h)) {
                  ++r.pruned;
                  return;
                }
            if (criticality(g, mode, options.budget).critical) r.patterns.push_back(canonicalize_pattern(g));
          });
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
          return;
        }
        std::lock_guard lock(mu);
        if (checkpoint.is_open()) {
          json j{{"run", run_id}, {"shard", shards[i].key}, {"candidates", r.candidates}, {"pruned", r.pruned}};
          j["patterns"] = json::array();
          for (const auto& g : r.patterns) j["patterns"].push_back(graph_json(g));
          checkpoint << j.dump() << '\n' << std::flush;
        }
        results[i] = std::move(r);
      }
    };
    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    for (auto& r : results) {
      out.candidates += r.candidates;
      out.pruned += r.pruned;
      for (auto& g : r.patterns) out.patterns.push_back(std::move(g));
    }
    std::sort(out.patterns.begin(), out.patterns.end(), graph_less);
    out.patterns.erase(std::unique(out.patterns.begin(), out.patterns.end()), out.patterns.end());
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void write_critical_set(const CriticalSet& set, const std::string& olg_path, const std::string& manifest_path) {
  std::ofstream olg(olg_path);
  if (!olg) throw Error(ErrorCode::InvalidInput, "cannot write " + olg_path);
  for (const auto& g : set.patterns) olg << serialize_graph(g);

  std::map<int, int> by_edges;
  for (const auto& g : set.patterns) ++by_edges[g.num_edges()];
  json counts{{"patterns", set.patterns.size()}, {"candidates", set.candidates}, {"pruned", set.pruned}};
  counts["by_edges"] = json::object();
  for (auto [m, c] : by_edges) counts["by_edges"][std::to_string(m)] = c;
  json manifest{{"parameters", {{"mode", mode_str(set.mode)}, {"family", family_json(set.complete_up_to)}}},
                {"counts", counts},
                {"complete_up_to", family_json(set.complete_up_to)},
                {"runtime", set.seconds}};
  std::ofstream m(manifest_path);
  if (!m) throw Error(ErrorCode::InvalidInput, "cannot write " + manifest_path);
  m << manifest.dump(2) << '\n';
}

std::string ConjectureReport::to_json() const {
  json j;
  j["max_m"] = max_m;
  j["one_critical"] = {{"count", one_critical.patterns.size()}, {"expected", 8}};
  j["mixed_critical"] = {{"count", mixed_critical.patterns.size()}, {"expected", 12}};
  j["queue_critical"] = {{"count", queue_critical.patterns.size()}, {"expected", 1}};
  j["reverified"] = reverified;
  j["antichains"] = antichains;
  for (auto [name, set] : {std::pair{"one_critical", &one_critical}, std::pair{"mixed_critical", &mixed_critical},
                           std::pair{"queue_critical", &queue_critical}}) {
    j[name]["patterns"] = json::array();
    for (const auto& g : set->patterns) j[name]["patterns"].push_back(graph_json(g));
  }
  return j.dump();
}

ConjectureReport conjecture_report(int max_m, const SearchOptions& options) {
  ConjectureReport r;
  r.max_m = max_m;
  const auto family = EnumFamily::matchings(max_m, 2);
  SearchOptions opts = options;
  opts.checkpoint_path.clear();
  r.one_critical = find_critical(family, CriticalMode::total(1), opts);
  r.mixed_critical = find_critical(family, CriticalMode::split(1, 1), opts);
  r.queue_critical = find_critical(family, CriticalMode::split(0, 1), opts);
  r.reverified = true;
  r.antichains = true;
  for (const auto* set : {&r.one_critical, &r.mixed_critical, &r.queue_critical}) {
    for (const auto& g : set->patterns)
      if (!criticality(g, set->mode, options.budget).critical) r.reverified = false;
    for (size_t i = 0; i < set->patterns.size(); ++i)
      for (size_t j = 0; j < set->patterns.size(); ++j)
        if (i != j && contains_pattern(set->patterns[j], set->patterns[i])) r.antichains = false;
  }
  return r;
}

}  // namespace mixedlayout
