#pragma once

// Exact isometry testing by backtracking over point bijections, pruned by
// sorted row-multiset signatures.

#include <optional>
#include <vector>

#include "metriq/metric_space.hpp"

namespace metriq {

namespace detail {

inline std::vector<std::vector<ExactScalar>> row_signatures(const FiniteMetricSpace& space) {
  const int n = space.n();
  std::vector<std::vector<ExactScalar>> sig(n);
  for (int i = 0; i < n; ++i) {
    std::vector<ExactScalar> row;
    row.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
      if (j != i) row.push_back(space.d(i, j));
    }
    std::sort(row.begin(), row.end(), ExactScalar::canonical_less);
    sig[i] = std::move(row);
  }
  return sig;
}

inline bool signatures_equal(const std::vector<ExactScalar>& a, const std::vector<ExactScalar>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

}  // namespace detail

/// A bijection sigma with d_Y(sigma(i), sigma(j)) = d_X(i, j), or nullopt.
inline std::optional<std::vector<int>> is_isometric(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  if (x.n() != y.n()) return std::nullopt;
  const int n = x.n();
  SymbolBasis::merge(x.basis(), y.basis());

  auto sig_x = detail::row_signatures(x);
  auto sig_y = detail::row_signatures(y);

  std::vector<std::vector<int>> candidates(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (detail::signatures_equal(sig_x[i], sig_y[j])) candidates[i].push_back(j);
    }
    if (candidates[i].empty()) return std::nullopt;
  }

  // assign the most constrained points first
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return candidates[a].size() < candidates[b].size(); });

  std::vector<int> mapping(n, -1);
  std::vector<bool> used(n, false);

  auto backtrack = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == static_cast<std::size_t>(n)) return true;
    int i = order[depth];
    for (int j : candidates[i]) {
      if (used[j]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < depth; ++k) {
        int p = order[k];
        if (x.d(i, p) != y.d(j, mapping[p])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      mapping[i] = j;
      used[j] = true;
      if (self(self, depth + 1)) return true;
      mapping[i] = -1;
      used[j] = false;
    }
    return false;
  };

  if (!backtrack(backtrack, 0)) return std::nullopt;
  return mapping;
}

}  // namespace metriq
