#pragma once

#include <algorithm>
#include <vector>

namespace permstat::detail {

// Enumerates multiplicity vectors (l_1, ..., l_m) with sum_j j * l_j = m
// and l_j <= bounds[j-1] (missing bounds are zero), calling visit(l).
template <typename F>
void for_each_bounded_partition(int m, const std::vector<int>& bounds,
                                F&& visit) {
  std::vector<int> l(static_cast<std::size_t>(std::max(m, 0)), 0);
  auto rec = [&](auto&& self, int j, int remaining) -> void {
    if (j > m) {
      if (remaining == 0) visit(l);
      return;
    }
    int bound = j <= static_cast<int>(bounds.size()) ? bounds[j - 1] : 0;
    int cap = std::min(bound, remaining / j);
    for (int v = 0; v <= cap; ++v) {
      l[j - 1] = v;
      self(self, j + 1, remaining - j * v);
    }
    l[j - 1] = 0;
  };
  if (m == 0) {
    visit(l);
    return;
  }
  rec(rec, 1, m);
}

}  // namespace permstat::detail
