#pragma once

// Small dense linear algebra over exact rationals and high-precision reals:
// characteristic polynomials (Faddeev-LeVerrier), linear solves, exact rank.

#include <string>
#include <vector>

#include "metriq/error.hpp"
#include "metriq/numeric.hpp"

namespace metriq {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

template <typename T>
Matrix<T> identity_matrix(std::size_t n) {
  Matrix<T> m(n, std::vector<T>(n, T(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = T(1);
  return m;
}

template <typename T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  const std::size_t n = a.size();
  Matrix<T> c(n, std::vector<T>(n, T(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const T& aik = a[i][k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += aik * b[k][j];
    }
  }
  return c;
}

/// Monic characteristic polynomial det(xI - A), coefficients by power of x.
/// Faddeev-LeVerrier: only ring operations and division by 1..n.
template <typename T>
std::vector<T> scalar_charpoly(const Matrix<T>& a) {
  const std::size_t n = a.size();
  std::vector<T> coeffs(n + 1, T(0));
  coeffs[n] = T(1);
  if (n == 0) return coeffs;

  Matrix<T> m = a;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      // M <- A (M + c_{n-k+1} I)
      Matrix<T> shifted = m;
      for (std::size_t i = 0; i < n; ++i) shifted[i][i] += coeffs[n - k + 1];
      m = mat_mul(a, shifted);
    }
    T trace(0);
    for (std::size_t i = 0; i < n; ++i) trace += m[i][i];
    coeffs[n - k] = -trace / static_cast<int>(k);
  }
  return coeffs;
}

/// Solve A w = rhs by Gaussian elimination with partial pivoting. A pivot
/// collapsing below `pivot_floor` (relative to the matrix scale) reports a
/// singular matrix rather than regularizing.
inline std::vector<Real> solve_linear(Matrix<Real> a, std::vector<Real> rhs, const Real& pivot_floor) {
  const std::size_t n = a.size();
  Real scale = 0;
  for (const auto& row : a) {
    for (const auto& v : row) {
      Real av = abs(v);
      if (av > scale) scale = av;
    }
  }
  if (scale == 0) scale = 1;
  Real floor_abs = pivot_floor * scale;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (abs(a[r][col]) > abs(a[pivot][col])) pivot = r;
    }
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(rhs[pivot], rhs[col]);
    }
    Real p = abs(a[col][col]);
    if (p <= floor_abs) {
      raise(Errc::SingularSimilarityMatrix,
            "pivot collapsed at column " + std::to_string(col) + " (|pivot|/scale ~ " +
                Real(p / scale).str(3) + "); matrix is singular at working precision");
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      Real f = a[r][col] / a[col][col];
      if (f == 0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }

  std::vector<Real> x(n, Real(0));
  for (std::size_t i = n; i-- > 0;) {
    Real acc = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

/// Exact rank of a rational matrix.
inline std::size_t rational_rank(Matrix<Rational> rows) {
  std::size_t rank = 0;
  const std::size_t nrows = rows.size();
  if (nrows == 0) return 0;
  const std::size_t ncols = rows[0].size();
  for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
    std::size_t pivot = rank;
    while (pivot < nrows && rows[pivot][col] == 0) ++pivot;
    if (pivot == nrows) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < nrows; ++r) {
      if (rows[r][col] == 0) continue;
      Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace metriq
