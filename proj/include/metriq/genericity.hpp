#pragma once

// Genericity predicates: rational independence of distances, and the weaker
// 3-sum distinctness condition under which reconstruction works. Both are
// exact in the coordinates; correctness assumes the declared basis symbols
// together with 1 are rationally independent.

#include <vector>

#include "metriq/linalg.hpp"
#include "metriq/metric_space.hpp"

namespace metriq {

/// True iff the C(n,2) distances are rationally independent.
inline bool is_generic(const FiniteMetricSpace& space) {
  const int n = space.n();
  std::size_t dim = 1 + (space.basis() ? space.basis()->size() : 0);
  std::vector<std::vector<Rational>> rows;
  rows.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<Rational> row(dim, Rational(0));
      for (const auto& [idx, c] : space.d(i, j).coords()) row[idx] = c;
      rows.push_back(std::move(row));
    }
  }
  if (rows.size() > dim) return false;
  return rational_rank(rows) == rows.size();
}

/// Condition on a multiset of edge lengths: values pairwise distinct and all
/// sums over distinct value triples pairwise distinct.
inline bool weak3_condition(const LengthMultiset& lengths) {
  if (!lengths.all_distinct()) return false;
  std::vector<ExactScalar> values = lengths.expanded();
  const std::size_t m = values.size();
  if (m < 3) return true;

  std::vector<ExactScalar> sums;
  sums.reserve(m * (m - 1) * (m - 2) / 6);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      ExactScalar ij = values[i] + values[j];
      for (std::size_t k = j + 1; k < m; ++k) sums.push_back(ij + values[k]);
    }
  }
  LengthMultiset bag{std::move(sums)};
  return bag.all_distinct();
}

/// True iff distances are mutually distinct and no two distinct edge triples
/// share the same length sum.
inline bool is_weak3generic(const FiniteMetricSpace& space) {
  return weak3_condition(space.distance_multiset());
}

}  // namespace metriq
