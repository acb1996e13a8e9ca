#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

namespace mixedlayout::detail {

// Successive shortest paths with Johnson potentials. Negative arc costs
// are allowed as long as the initial residual graph has no negative cycle.
class MinCostFlow {
 public:
  struct Arc {
    int to;
    int rev;
    int cap;
    int64_t cost;
  };

  explicit MinCostFlow(int n) : adj_(n) {}

  // Returns (node, index) for looking the arc up after solving.
  std::pair<int, int> add_arc(int from, int to, int cap, int64_t cost) {
    int idx = static_cast<int>(adj_[from].size());
    adj_[from].push_back({to, static_cast<int>(adj_[to].size()), cap, cost});
    adj_[to].push_back({from, idx, 0, -cost});
    return {from, idx};
  }

  const std::vector<Arc>& arcs(int node) const { return adj_[node]; }
  // Flow on a forward arc equals the residual capacity of its reverse.
  int flow(int node, int idx) const {
    const Arc& a = adj_[node][idx];
    return adj_[a.to][a.rev].cap;
  }

  // Pushes up to `limit` units, stopping early once the cheapest
  // augmenting path has nonnegative cost. Returns (flow, cost).
  // topological: every arc goes from a lower to a higher node index, so
  // the initial potentials take one relaxation pass.
  std::pair<int, int64_t> solve(int s, int t, int limit, bool topological = false) {
    const int n = static_cast<int>(adj_.size());
    std::vector<int64_t> pot(n, 0);
    if (topological)
      dag_potentials(s, pot);
    else
      bellman_ford(s, pot);
    int total = 0;
    int64_t cost = 0;
    std::vector<int64_t> dist(n);
    std::vector<int> prev_node(n), prev_arc(n);
    while (total < limit) {
      std::fill(dist.begin(), dist.end(), kInf);
      dist[s] = 0;
      using Item = std::pair<int64_t, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      pq.push({0, s});
      while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (int i = 0; i < static_cast<int>(adj_[v].size()); ++i) {
          const Arc& a = adj_[v][i];
          if (a.cap <= 0) continue;
          int64_t nd = d + a.cost + pot[v] - pot[a.to];
          if (nd < dist[a.to]) {
            dist[a.to] = nd;
            prev_node[a.to] = v;
            prev_arc[a.to] = i;
            pq.push({nd, a.to});
          }
        }
      }
      if (dist[t] == kInf) break;
      for (int v = 0; v < n; ++v)
        if (dist[v] != kInf) pot[v] += dist[v];
      int64_t path_cost = pot[t] - pot[s];
      if (path_cost >= 0) break;
      int push = limit - total;
      for (int v = t; v != s; v = prev_node[v]) push = std::min(push, adj_[prev_node[v]][prev_arc[v]].cap);
      for (int v = t; v != s; v = prev_node[v]) {
        Arc& a = adj_[prev_node[v]][prev_arc[v]];
        a.cap -= push;
        adj_[v][a.rev].cap += push;
      }
      total += push;
      cost += path_cost * push;
    }
    return {total, cost};
  }

 private:
  static constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

  void dag_potentials(int s, std::vector<int64_t>& pot) const {
    const int n = static_cast<int>(adj_.size());
    std::vector<int64_t> dist(n, kInf);
    dist[s] = 0;
    for (int v = s; v < n; ++v) {
      if (dist[v] == kInf) continue;
      for (const Arc& a : adj_[v])
        if (a.cap > 0 && dist[v] + a.cost < dist[a.to]) dist[a.to] = dist[v] + a.cost;
    }
    for (int v = 0; v < n; ++v) pot[v] = dist[v] == kInf ? 0 : dist[v];
  }

  // SPFA; unreachable nodes keep potential 0, which is harmless because
  // they stay unreachable.
  void bellman_ford(int s, std::vector<int64_t>& pot) const {
    const int n = static_cast<int>(adj_.size());
    std::vector<int64_t> dist(n, kInf);
    std::vector<char> queued(n, 0);
    std::deque<int> q;
    dist[s] = 0;
    q.push_back(s);
    queued[s] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      queued[v] = 0;
      for (const Arc& a : adj_[v]) {
        if (a.cap <= 0) continue;
        if (dist[v] + a.cost < dist[a.to]) {
          dist[a.to] = dist[v] + a.cost;
          if (!queued[a.to]) {
            queued[a.to] = 1;
            q.push_back(a.to);
          }
        }
      }
    }
    for (int v = 0; v < n; ++v) pot[v] = dist[v] == kInf ? 0 : dist[v];
  }

  std::vector<std::vector<Arc>> adj_;
};

}  // namespace mixedlayout::detail
