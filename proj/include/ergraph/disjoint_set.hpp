#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace ergraph {

/// Union-find with union by size and path halving.
class DisjointSet {
 public:
  explicit DisjointSet(std::int64_t count)
      : parent_(static_cast<std::size_t>(count)),
        size_(static_cast<std::size_t>(count), 1),
        components_(count) {
    std::iota(parent_.begin(), parent_.end(), std::int32_t{0});
  }

  std::int32_t find(std::int32_t v) noexcept {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];  // path halving
      v = parent_[v];
    }
    return v;
  }

  void unite(std::int32_t a, std::int32_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
  }

  std::int64_t components() const noexcept { return components_; }

  std::int64_t size_of(std::int32_t v) noexcept { return size_[find(v)]; }

  /// Sizes of all components, unordered.
  std::vector<std::int64_t> component_sizes() {
    std::vector<std::int64_t> sizes;
    sizes.reserve(static_cast<std::size_t>(components_));
    for (std::int32_t v = 0; v < static_cast<std::int32_t>(parent_.size()); ++v) {
      if (find(v) == v) sizes.push_back(size_[v]);
    }
    return sizes;
  }

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int64_t> size_;
  std::int64_t components_;
};

}  // namespace ergraph
