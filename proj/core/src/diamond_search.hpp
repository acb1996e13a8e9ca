#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mixedlayout/error.hpp"
#include "mixedlayout/graph.hpp"

namespace mixedlayout {

// Row-major backtracking over the k x k cells; each cell picks a column to
// the right of its left and upper neighbours, with the row between them.
class DiamondSearch {
 public:
  DiamondSearch(const GridMatching& m, int k, uint64_t budget)
      : m_(m), k_(k), budget_(budget), lab_(k, std::vector<EdgeId>(k, -1)) {}

  bool run() { return place(0); }
  const std::vector<std::vector<EdgeId>>& labeling() const { return lab_; }

 private:
  bool place(int cell) {
    if (cell == k_ * k_) return true;
    if (++nodes_ > budget_) throw Error(ErrorCode::SizeLimit, "diamond search exceeded node budget");
    const int i = cell / k_;
    const int j = cell % k_;
    int min_x = 0;
    int min_y = 0;
    int max_y = m_.size() + 1;
    if (j > 0) {
      min_x = std::max(min_x, lab_[i][j - 1] + 1);
      min_y = m_.row(lab_[i][j - 1]);
    }
    if (i > 0) {
      min_x = std::max(min_x, lab_[i - 1][j] + 1);
      max_y = m_.row(lab_[i - 1][j]);
    }
    // The rest of this row still needs k-1-j columns to its right.
    const int max_x = m_.size() - (k_ - 1 - j);
    for (int x = min_x; x < max_x; ++x) {
      int y = m_.row(x);
      if (y <= min_y || y >= max_y) continue;
      lab_[i][j] = x;
      if (place(cell + 1)) return true;
    }
    lab_[i][j] = -1;
    return false;
  }

  const GridMatching& m_;
  int k_;
  uint64_t budget_;
  uint64_t nodes_ = 0;
  std::vector<std::vector<EdgeId>> lab_;
};


namespace detail {

std::optional<std::vector<std::vector<EdgeId>>> find_diamond(const GridMatching& m, int k, uint64_t budget);

}  // namespace detail

}  // namespace mixedlayout
