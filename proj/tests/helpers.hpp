#pragma once

// Shared builders and deterministic random generators for the test suites.

#include <array>
#include <random>
#include <vector>

#include "metriq/metriq.hpp"

namespace testutil {

using namespace metriq;

/// Basis with sqrt values computed at working precision.
inline BasisPtr sqrt_basis(const std::vector<long>& ks) {
  std::vector<std::pair<std::string, Real>> decls;
  for (long k : ks) decls.emplace_back("sqrt" + std::to_string(k), sqrt(Real(k)));
  return SymbolBasis::make_computed(decls);
}

/// Space from the strict-upper-triangle distances in row-major (i<j) order.
inline FiniteMetricSpace space_from_upper(int n, const std::vector<ExactScalar>& upper,
                                          const SpaceOptions& opts = {}) {
  std::vector<std::vector<ExactScalar>> dist(n, std::vector<ExactScalar>(n));
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      dist[i][j] = upper.at(idx);
      dist[j][i] = upper.at(idx);
      ++idx;
    }
  }
  return make_space(dist, nullptr, opts);
}

inline FiniteMetricSpace space_from_upper_rationals(int n, const std::vector<Rational>& upper,
                                                    const SpaceOptions& opts = {}) {
  std::vector<ExactScalar> scalars;
  scalars.reserve(upper.size());
  for (const auto& r : upper) scalars.emplace_back(r);
  return space_from_upper(n, scalars, opts);
}

/// Random rational distances num/den with num in [den, 2*den): all values in
/// [1, 2), so the triangle inequality holds automatically.
inline FiniteMetricSpace random_rational_space(int n, std::mt19937_64& rng, long den = 1000000) {
  std::uniform_int_distribution<long> num(den, 2 * den - 1);
  std::vector<Rational> upper;
  upper.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n * (n - 1) / 2; ++i) upper.emplace_back(num(rng), den);
  return space_from_upper_rationals(n, upper);
}

/// Random weakly 3-generic space: distances in [1, 2) with a wide value
/// range, resampled until edges and triple sums are collision-free.
inline FiniteMetricSpace random_weak3_space(int n, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    FiniteMetricSpace space = random_rational_space(n, rng, 1000000000L);
    if (is_weak3generic(space)) return space;
  }
  raise(Errc::InternalError, "weak3 sampling failed to converge");
}

/// Random 4-point space assembled from opposite-pair sums (alpha, beta,
/// gamma); used to hit the arithmetic-progression and equal-pair tau4 cases.
inline FiniteMetricSpace four_point_from_pairs(const std::array<Rational, 6>& edges) {
  // opposite slots: (01,23), (02,13), (03,12)
  std::vector<Rational> upper{edges[0], edges[2], edges[4], edges[5], edges[3], edges[1]};
  return space_from_upper_rationals(4, upper);
}

inline ExactScalar rat(long num, long den = 1) { return ExactScalar(Rational(num, den)); }

}  // namespace testutil
