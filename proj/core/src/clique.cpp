#include "mixedlayout/clique.hpp"

#include <algorithm>

#include "mixedlayout/error.hpp"

namespace mixedlayout {

namespace {

class CliqueSearch {
 public:
  CliqueSearch(const std::vector<DynBitset>& adj, uint64_t budget) : adj_(adj), budget_(budget) {}

  std::vector<int> run() {
    const int n = static_cast<int>(adj_.size());
    DynBitset all(n);
    for (int i = 0; i < n; ++i) all.set(i);
    std::vector<int> current;
    expand(all, current);
    return best_;
  }

 private:
  // Sequential coloring of the candidate set: vertices come out in
  // nondecreasing color order, and color+1 bounds the clique size.
  void color_sort(const DynBitset& cand, std::vector<int>& order, std::vector<int>& bound) const {
    DynBitset uncolored = cand;
    int color = 0;
    while (uncolored.any()) {
      ++color;
      DynBitset avail = uncolored;
      while (avail.any()) {
        int v = avail.first();
        avail.reset(v);
        avail.andnot(adj_[v]);
        uncolored.reset(v);
        order.push_back(v);
        bound.push_back(color);
      }
    }
  }

  void expand(DynBitset cand, std::vector<int>& current) {
    if (++nodes_ > budget_) throw Error(ErrorCode::SizeLimit, "clique search exceeded node budget");
    std::vector<int> order, bound;
    color_sort(cand, order, bound);
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (current.size() + bound[i] <= best_.size()) return;
      int v = order[i];
      current.push_back(v);
      DynBitset next = cand & adj_[v];
      if (next.none()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(next, current);
      }
      current.pop_back();
      cand.reset(v);
    }
  }

  const std::vector<DynBitset>& adj_;
  uint64_t budget_;
  uint64_t nodes_ = 0;
  std::vector<int> best_;
};

}  // namespace

std::vector<int> max_clique(const std::vector<DynBitset>& adj, uint64_t budget) {
  if (adj.empty()) return {};
  auto clique = CliqueSearch(adj, budget).run();
  std::sort(clique.begin(), clique.end());
  return clique;
}

std::vector<int> greedy_coloring(const std::vector<DynBitset>& adj, const std::vector<int>& order) {
  std::vector<int> color(adj.size(), -1);
  for (int v : order) {
    std::vector<char> used;
    adj[v].for_each([&](int w) {
      if (color[w] >= 0) {
        if (color[w] >= static_cast<int>(used.size())) used.resize(color[w] + 1, 0);
        used[color[w]] = 1;
      }
    });
    int c = 0;
    while (c < static_cast<int>(used.size()) && used[c]) ++c;
    color[v] = c;
  }
  return color;
}

}  // namespace mixedlayout
