#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fraisse/structure.hpp"

namespace fraisse {

/// Calls f on every k-subset of {0..n-1} as a sorted span, in
/// lexicographic order.
template <class F>
void for_each_subset_of_size(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<Element> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<Element>(i);
  while (true) {
    f(std::span<const Element>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Calls f on every tuple of length r over {0..n-1}, lexicographically,
/// until f returns false.
template <class F>
void for_each_tuple(std::size_t n, unsigned r, F&& f) {
  if (n == 0 && r > 0) return;
  std::vector<Element> t(r, 0);
  while (true) {
    if (!f(std::span<const Element>(t))) return;
    unsigned p = r;
    while (true) {
      if (p == 0) return;
      --p;
      if (++t[p] < n) break;
      t[p] = 0;
    }
  }
}

}  // namespace fraisse
