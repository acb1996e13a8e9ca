#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace mixedlayout {

// Fixed-size dynamic bitset; the hot loops in the searches only need
// word-wise and/andnot/popcount.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(int size) : size_(size), words_((size + 63) / 64, 0) {}

  int size() const { return size_; }

  void set(int i) { words_[i >> 6] |= (uint64_t{1} << (i & 63)); }
  void reset(int i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

  void clear() {
    for (auto& w : words_) w = 0;
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  bool intersects(const DynBitset& o) const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  // Index of the lowest set bit, or -1.
  int first() const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
    return -1;
  }

  DynBitset& operator&=(const DynBitset& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  DynBitset& andnot(const DynBitset& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
  friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }
  friend bool operator==(const DynBitset&, const DynBitset&) = default;

  template <class F>
  void for_each(F&& f) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t w = words_[i];
      while (w) {
        f(static_cast<int>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  std::span<const uint64_t> words() const { return words_; }

 private:
  int size_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace mixedlayout
