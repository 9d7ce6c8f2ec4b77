#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace dgt::detail {

// Roots are the least index of each class.
struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (y < x) std::swap(x, y);
    parent[y] = x;
  }
};

}  // namespace dgt::detail
