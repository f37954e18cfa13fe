#pragma once

// Similarity-matrix invariants: characteristic polynomials over the GenPoly
// ring, the tau coefficients and their cycle-enumeration oracle, magnitude
// (numeric and formal), stochastic variants, and adjacency spectra.

#include <algorithm>
#include <string>
#include <vector>

#include "metriq/genpoly.hpp"
#include "metriq/linalg.hpp"
#include "metriq/metric_space.hpp"

namespace metriq {

inline constexpr int kDefaultOracleLimit = 7;

/// z_X(q): entry (i,j) is q^{d_ij}, diagonal 1.
inline Matrix<GenPoly> similarity_matrix(const FiniteMetricSpace& space) {
  const int n = space.n();
  Matrix<GenPoly> z(n, std::vector<GenPoly>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      z[i][j] = (i == j) ? GenPoly::one() : GenPoly::monomial(1, space.d(i, j));
    }
  }
  return z;
}

/// Numeric similarity matrix at a fixed q0 in (0,1].
inline Matrix<Real> numeric_similarity_matrix(const FiniteMetricSpace& space, const Real& q0) {
  if (!(q0 > 0)) raise(Errc::DomainError, "similarity matrix requires q0 > 0");
  const int n = space.n();
  Matrix<Real> z(n, std::vector<Real>(n, Real(1)));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Real v = pow(q0, space.d(i, j).numeric());
      z[i][j] = v;
      z[j][i] = v;
    }
  }
  return z;
}

/// tau_1..tau_n: elementary symmetric polynomials of the eigenvalues of
/// z_X(q) - I, with tau_k read off the shifted characteristic polynomial.
class TauVector {
 public:
  explicit TauVector(std::vector<GenPoly> taus) : taus_(std::move(taus)) {}

  std::size_t size() const { return taus_.size(); }

  /// k is 1-based.
  const GenPoly& operator[](std::size_t k) const {
    if (k < 1 || k > taus_.size()) raise(Errc::IndexOutOfRange, "tau index " + std::to_string(k));
    return taus_[k - 1];
  }

  const std::vector<GenPoly>& all() const { return taus_; }

 private:
  std::vector<GenPoly> taus_;
};

namespace detail {

inline Matrix<GenPoly> shifted_similarity(const FiniteMetricSpace& space) {
  const int n = space.n();
  Matrix<GenPoly> b(n, std::vector<GenPoly>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) b[i][j] = GenPoly::monomial(1, space.d(i, j));
    }
  }
  return b;
}

inline Matrix<GenPoly> poly_mat_mul(const Matrix<GenPoly>& a, const Matrix<GenPoly>& b) {
  const std::size_t n = a.size();
  Matrix<GenPoly> c(n, std::vector<GenPoly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      GenPolyAccumulator acc;
      for (std::size_t k = 0; k < n; ++k) acc.add_product(a[i][k], b[k][j]);
      c[i][j] = acc.take();
    }
  }
  return c;
}

/// trace(A * B) for symmetric A, B.
inline GenPoly trace_product(const Matrix<GenPoly>& a, const Matrix<GenPoly>& b) {
  const std::size_t n = a.size();
  GenPolyAccumulator acc;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) acc.add_product(a[i][j], b[j][i]);
  }
  return acc.take();
}

}  // namespace detail

/// LeVerrier trace recurrence: power-sum traces s_m = tr((z-I)^m) followed by
/// the Newton-form recurrence k e_k = sum (-1)^{i-1} e_{k-i} s_i. Only ring
/// operations plus exact division by the integers 1..n.
inline TauVector tau(const FiniteMetricSpace& space, int kmax = -1) {
  const int n = space.n();
  if (kmax < 0) kmax = n;
  if (kmax < 1 || kmax > n) raise(Errc::IndexOutOfRange, "tau order must lie in 1..n");

  // powers of B = z - I up to ceil(kmax/2); traces via half-power pairing
  const int half = (kmax + 1) / 2;
  std::vector<Matrix<GenPoly>> powers;
  powers.reserve(half + 1);
  powers.push_back({});  // unused slot 0
  powers.push_back(detail::shifted_similarity(space));
  for (int m = 2; m <= half; ++m) {
    powers.push_back(detail::poly_mat_mul(powers[m / 2], powers[(m + 1) / 2]));
  }

  std::vector<GenPoly> s(kmax + 1);  // s[1] = trace(B) = 0
  for (int m = 2; m <= kmax; ++m) {
    s[m] = detail::trace_product(powers[(m + 1) / 2], powers[m / 2]);
  }

  std::vector<GenPoly> e(kmax + 1);
  e[0] = GenPoly::one();
  for (int k = 1; k <= kmax; ++k) {
    GenPolyAccumulator acc;
    for (int i = 1; i <= k; ++i) {
      if (s[i].is_zero() || e[k - i].is_zero()) continue;
      if (i % 2 == 1) {
        acc.add_product(e[k - i], s[i]);
      } else {
        acc.add_product(e[k - i], -s[i]);
      }
    }
    e[k] = acc.take().divided_by(k);
  }

  e.erase(e.begin());
  return TauVector(std::move(e));
}

/// pbar_X(q; mu) = mu^n + sum_l (-1)^l tau_l mu^{n-l}.
inline LambdaPoly charpoly_bar_from_tau(const TauVector& taus) {
  const int n = static_cast<int>(taus.size());
  std::vector<GenPoly> coeffs(n + 1);
  coeffs[n] = GenPoly::one();
  for (int k = 1; k <= n; ++k) {
    coeffs[n - k] = (k % 2 == 1) ? -taus[k] : taus[k];
  }
  return LambdaPoly(std::move(coeffs));
}

inline LambdaPoly charpoly_bar(const FiniteMetricSpace& space) { return charpoly_bar_from_tau(tau(space)); }

/// p_X(q; lambda) = |lambda I - z_X(q)|.
inline LambdaPoly charpoly(const FiniteMetricSpace& space) { return lp_shift(charpoly_bar(space)); }

inline LambdaPoly charpoly_from_tau(const TauVector& taus) { return lp_shift(charpoly_bar_from_tau(taus)); }

/// Independent oracle for tau_k: enumerate fixed-point-free permutations of
/// every k-subset of points, accumulating (-1)^{c + k} q^{cycle length}.
inline GenPoly tau_oracle(const FiniteMetricSpace& space, int k, int oracle_limit = kDefaultOracleLimit) {
  const int n = space.n();
  if (n > oracle_limit) {
    raise(Errc::OracleLimitExceeded, "oracle limited to " + std::to_string(oracle_limit) +
                                         " points, space has " + std::to_string(n));
  }
  if (k < 1 || k > n) raise(Errc::IndexOutOfRange, "cycle size must lie in 1..n");
  if (k == 1) return GenPoly::zero();

  std::vector<int> subset(k);
  GenPolyAccumulator acc;

  auto component_count = [&](const std::vector<int>& image) {
    int c = 0;
    std::vector<bool> seen(k, false);
    for (int start = 0; start < k; ++start) {
      if (seen[start]) continue;
      ++c;
      int at = start;
      while (!seen[at]) {
        seen[at] = true;
        // position of image[at] inside the subset
        int target = image[at];
        at = static_cast<int>(std::find(subset.begin(), subset.end(), target) - subset.begin());
      }
    }
    return c;
  };

  auto process_subset = [&] {
    std::vector<int> image = subset;
    std::sort(image.begin(), image.end());
    do {
      bool fixed_point = false;
      for (int i = 0; i < k; ++i) {
        if (image[i] == subset[i]) {
          fixed_point = true;
          break;
        }
      }
      if (fixed_point) continue;
      ExactScalar length;
      for (int i = 0; i < k; ++i) length = length + space.d(subset[i], image[i]);
      int c = component_count(image);
      acc.add_term(std::move(length), Rational(((c + k) % 2 == 0) ? 1 : -1));
    } while (std::next_permutation(image.begin(), image.end()));
  };

  auto choose = [&](auto&& self, int start, int depth) -> void {
    if (depth == k) {
      process_subset();
      return;
    }
    for (int v = start; v <= n - (k - depth); ++v) {
      subset[depth] = v;
      self(self, v + 1, depth + 1);
    }
  };
  choose(choose, 0, 0);

  return acc.take();
}

// ---------------------------------------------------------------------------
// Magnitude.

/// |tX|: solves Z_{tX} w = 1 at working precision and returns sum(w).
inline Real magnitude(const FiniteMetricSpace& space, const Real& t) {
  if (!(t > 0)) raise(Errc::DomainError, "magnitude requires t > 0");
  const int n = space.n();
  Real q0 = exp(-t);
  Matrix<Real> z = numeric_similarity_matrix(space, q0);
  Real pivot_floor = pow(Real(10), -(precision::digits() - 10));
  std::vector<Real> w = solve_linear(std::move(z), std::vector<Real>(n, Real(1)), pivot_floor);
  Real sum = 0;
  for (const auto& wi : w) sum += wi;
  return sum;
}

/// Truncated formal magnitude: sum over all paths of length <= max_exponent
/// of (-1)^k q^{length}, including the k = 0 term n q^0. Truncation is by
/// exponent bound, so every emitted term is final.
inline GenPoly formal_magnitude(const FiniteMetricSpace& space, const Rational& max_exponent) {
  if (max_exponent <= 0) raise(Errc::DomainError, "formal magnitude cutoff must be positive");
  const int n = space.n();
  const ExactScalar cutoff{max_exponent};
  const double cutoff_quick = max_exponent.convert_to<double>() + 0.5;

  GenPolyAccumulator acc;
  acc.add_term(ExactScalar(), Rational(n));

  auto extend = [&](auto&& self, int at, const ExactScalar& length, int parity) -> void {
    for (int next = 0; next < n; ++next) {
      if (next == at) continue;
      ExactScalar longer = length + space.d(at, next);
      if (longer.approx() > cutoff_quick) continue;
      if ((cutoff - longer).sign_within(Real(0)) < 0) continue;
      acc.add_term(longer, Rational(parity));
      self(self, next, longer, -parity);
    }
  };
  for (int start = 0; start < n; ++start) extend(extend, start, ExactScalar(), -1);

  return acc.take();
}

// ---------------------------------------------------------------------------
// Stochastic similarity invariants.

enum class StochasticVariant { Alpha, Beta };

/// Characteristic polynomial of the row-normalized similarity matrix at a
/// sampled q0. Exact rational when q0 is rational and all distances are
/// integers; high-precision numeric otherwise.
struct StochasticCharpoly {
  bool exact = false;
  std::vector<Rational> exact_coeffs;  // empty unless exact
  std::vector<Real> coeffs;            // always populated, by power of lambda
};

inline StochasticCharpoly stochastic_charpoly(const FiniteMetricSpace& space, StochasticVariant variant,
                                              const Rational& q0) {
  if (q0 <= 0 || q0 >= 1) raise(Errc::DomainError, "stochastic sample q0 must lie in (0,1), got " + q0.str());
  const int n = space.n();
  if (variant == StochasticVariant::Beta && n < 2) {
    raise(Errc::DomainError, "beta variant needs at least two points");
  }

  bool integer_distances = true;
  for (int i = 0; i < n && integer_distances; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const ExactScalar& d = space.d(i, j);
      if (!d.is_rational() || !is_integer(d.rational_value()) || d.rational_value() < 0 ||
          d.rational_value() > 1000000) {
        integer_distances = false;
        break;
      }
    }
  }

  StochasticCharpoly out;
  if (integer_distances) {
    Matrix<Rational> z(n, std::vector<Rational>(n, Rational(1)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) z[i][j] = rational_pow(q0, space.d(i, j).rational_value().convert_to<unsigned long>());
      }
    }
    for (int i = 0; i < n; ++i) {
      Rational row_sum = 0;
      for (int j = 0; j < n; ++j) row_sum += z[i][j];
      if (variant == StochasticVariant::Beta) {
        row_sum -= 1;
        z[i][i] = 0;
      }
      for (int j = 0; j < n; ++j) z[i][j] /= row_sum;
    }
    out.exact = true;
    out.exact_coeffs = scalar_charpoly(z);
    out.coeffs.reserve(out.exact_coeffs.size());
    for (const auto& c : out.exact_coeffs) out.coeffs.emplace_back(c);
  } else {
    Matrix<Real> z = numeric_similarity_matrix(space, Real(q0));
    for (int i = 0; i < n; ++i) {
      Real row_sum = 0;
      for (int j = 0; j < n; ++j) row_sum += z[i][j];
      if (variant == StochasticVariant::Beta) {
        row_sum -= 1;
        z[i][i] = 0;
      }
      for (int j = 0; j < n; ++j) z[i][j] /= row_sum;
    }
    out.exact = false;
    out.coeffs = scalar_charpoly(z);
  }
  return out;
}

inline bool stochastic_equal(const StochasticCharpoly& a, const StochasticCharpoly& b, const Real& tol) {
  if (a.coeffs.size() != b.coeffs.size()) return false;
  if (a.exact && b.exact) return a.exact_coeffs == b.exact_coeffs;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (abs(a.coeffs[i] - b.coeffs[i]) > tol) return false;
  }
  return true;
}

/// Exact integer characteristic polynomial of the 0/1 adjacency matrix.
inline std::vector<Rational> adjacency_charpoly(const Graph& g) {
  validate_graph(g);
  Matrix<Rational> a(g.n, std::vector<Rational>(g.n, Rational(0)));
  for (auto [u, v] : g.edges) {
    a[u][v] = 1;
    a[v][u] = 1;
  }
  return scalar_charpoly(a);
}

}  // namespace metriq
