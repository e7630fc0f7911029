#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace percolab {

/// Disjoint sets with union by size and path halving.
class UnionFind {
 public:
  UnionFind() = default;
  explicit UnionFind(std::uint32_t n) { reset(n); }

  void reset(std::uint32_t n) {
    parent_.resize(n);
    size_.assign(n, 1);
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    components_ = n;
  }

  std::uint32_t find(std::uint32_t x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns false when a and b were already in the same set.
  bool unite(std::uint32_t a, std::uint32_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
  }

  std::uint32_t element_count() const noexcept { return static_cast<std::uint32_t>(parent_.size()); }
  std::uint32_t components() const noexcept { return components_; }
  bool is_root(std::uint32_t x) const noexcept { return parent_[x] == x; }
  /// Valid for roots only.
  std::uint32_t root_size(std::uint32_t x) const noexcept { return size_[x]; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::uint32_t components_ = 0;
};

/// Union-find without path compression so that unions can be undone in LIFO
/// order. Used by the exhaustive oracles.
class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(std::uint32_t n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::uint32_t find(std::uint32_t x) const noexcept {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      history_.push_back(kNoop);
      return;
    }
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    history_.push_back(b);
  }

  void undo() {
    const std::uint32_t b = history_.back();
    history_.pop_back();
    if (b == kNoop) return;
    const std::uint32_t a = parent_[b];
    size_[a] -= size_[b];
    parent_[b] = b;
    ++components_;
  }

  std::uint32_t components() const noexcept { return components_; }

 private:
  static constexpr std::uint32_t kNoop = ~std::uint32_t{0};
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<std::uint32_t> history_;
  std::uint32_t components_;
};

}  // namespace percolab
