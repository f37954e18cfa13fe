#pragma once

// Exact real scalar: a rational linear combination over a declared symbol
// basis. Coordinate index 0 is the rational unit, index i >= 1 is symbol
// i-1 of the basis. Equality is exact (identical coordinates); ordering
// decisions are numeric with a precision guard.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "metriq/error.hpp"
#include "metriq/numeric.hpp"
#include "metriq/symbol_basis.hpp"

namespace metriq {

class ExactScalar {
 public:
  using Coord = std::pair<std::uint32_t, Rational>;

  ExactScalar() = default;

  explicit ExactScalar(const Rational& r) {
    if (r != 0) coords_.emplace_back(0u, r);
  }

  ExactScalar(long v) : ExactScalar(Rational(v)) {}  // NOLINT(runtime/explicit)

  static ExactScalar with_coords(BasisPtr basis, std::vector<Coord> coords) {
    ExactScalar s;
    s.basis_ = std::move(basis);
    s.coords_ = std::move(coords);
    s.normalize();
    return s;
  }

  /// coeff * (symbol #index of basis), index 0-based.
  static ExactScalar basis_symbol(const BasisPtr& basis, std::size_t index, const Rational& coeff = 1) {
    if (!basis || index >= basis->size()) {
      raise(Errc::IndexOutOfRange, "basis symbol index " + std::to_string(index) + " out of range");
    }
    return with_coords(basis, {{static_cast<std::uint32_t>(index + 1), coeff}});
  }

  bool is_zero() const { return coords_.empty(); }
  bool is_rational() const { return basis_ == nullptr; }

  Rational rational_part() const {
    if (!coords_.empty() && coords_.front().first == 0) return coords_.front().second;
    return Rational(0);
  }

  /// Value as a rational; only valid when is_rational().
  Rational rational_value() const {
    if (!is_rational()) raise(Errc::DomainError, "scalar is not rational: " + to_string());
    return rational_part();
  }

  const std::vector<Coord>& coords() const { return coords_; }
  const BasisPtr& basis() const { return basis_; }

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) { return combined(a, b, false); }
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return combined(a, b, true); }

  ExactScalar operator-() const {
    ExactScalar r(*this);
    for (auto& [idx, c] : r.coords_) c = -c;
    return r;
  }

  ExactScalar scaled(const Rational& factor) const {
    if (factor == 0) return ExactScalar();
    ExactScalar r(*this);
    for (auto& [idx, c] : r.coords_) c *= factor;
    return r;
  }

  bool operator==(const ExactScalar& other) const {
    if (coords_.size() != other.coords_.size()) return false;
    if (coords_.empty()) return true;
    check_comparable(other);
    return coords_ == other.coords_;
  }
  bool operator!=(const ExactScalar& other) const { return !(*this == other); }

  /// Deterministic double approximation, used as a fast primary sort key.
  double approx() const {
    double acc = 0.0;
    for (const auto& [idx, c] : coords_) {
      double cd = c.template convert_to<double>();
      acc += (idx == 0) ? cd : cd * basis_->symbol(idx - 1).value_as_double;
    }
    return acc;
  }

  /// Value at the current working precision.
  Real numeric() const {
    Real acc = 0;
    for (const auto& [idx, c] : coords_) {
      Real cr(c);
      if (idx == 0) {
        acc += cr;
      } else {
        acc += cr * basis_->symbol(idx - 1).value;
      }
    }
    return acc;
  }

  /// Sign with exact shortcut; raises PrecisionExhausted when the numeric
  /// value falls inside the comparison guard without being exactly zero.
  int guarded_sign() const {
    if (coords_.empty()) return 0;
    if (is_rational()) return sign_of(coords_.front().second);
    Real v = numeric();
    if (abs(v) <= precision::guard_epsilon()) {
      raise(Errc::PrecisionExhausted, "scalar " + to_string() + " is numerically indistinguishable from 0 at " +
                                          std::to_string(precision::digits()) + " digits");
    }
    return v < 0 ? -1 : 1;
  }

  /// Sign treating |value| <= tol as zero (no guard diagnostics).
  int sign_within(const Real& tol) const {
    if (coords_.empty()) return 0;
    if (is_rational()) return sign_of(coords_.front().second);
    Real v = numeric();
    if (abs(v) <= tol) return 0;
    return v < 0 ? -1 : 1;
  }

  /// Total order: numeric double key first, exact coordinates break ties.
  /// Its equivalence classes coincide with exact equality.
  static int canonical_compare(const ExactScalar& a, const ExactScalar& b) {
    double da = a.approx();
    double db = b.approx();
    if (da < db) return -1;
    if (da > db) return 1;
    a.check_comparable(b);
    return lex_compare(a.coords_, b.coords_);
  }

  static bool canonical_less(const ExactScalar& a, const ExactScalar& b) { return canonical_compare(a, b) < 0; }

  std::string to_string() const {
    if (coords_.empty()) return "0";
    std::string out;
    for (const auto& [idx, c] : coords_) {
      std::string piece = (idx == 0) ? c.str() : c.str() + "*" + basis_->symbol(idx - 1).name;
      if (out.empty()) {
        out = piece;
      } else if (!piece.empty() && piece[0] == '-') {
        out += piece;
      } else {
        out += "+" + piece;
      }
    }
    return out;
  }

  static int lex_compare(const std::vector<Coord>& a, const std::vector<Coord>& b) {
    std::size_t i = 0;
    for (; i < a.size() && i < b.size(); ++i) {
      if (a[i].first != b[i].first) return a[i].first < b[i].first ? -1 : 1;
      int c = a[i].second.compare(b[i].second);
      if (c != 0) return c;
    }
    if (i < a.size()) return 1;
    if (i < b.size()) return -1;
    return 0;
  }

 private:
  static ExactScalar combined(const ExactScalar& a, const ExactScalar& b, bool subtract) {
    ExactScalar r;
    r.basis_ = SymbolBasis::merge(a.basis_, b.basis_);
    r.coords_.reserve(a.coords_.size() + b.coords_.size());
    std::size_t i = 0, j = 0;
    while (i < a.coords_.size() || j < b.coords_.size()) {
      if (j >= b.coords_.size() || (i < a.coords_.size() && a.coords_[i].first < b.coords_[j].first)) {
        r.coords_.push_back(a.coords_[i++]);
      } else if (i >= a.coords_.size() || b.coords_[j].first < a.coords_[i].first) {
        const auto& [idx, c] = b.coords_[j++];
        r.coords_.emplace_back(idx, subtract ? Rational(-c) : c);
      } else {
        Rational c = subtract ? Rational(a.coords_[i].second - b.coords_[j].second)
                              : Rational(a.coords_[i].second + b.coords_[j].second);
        if (c != 0) r.coords_.emplace_back(a.coords_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    r.normalize();
    return r;
  }

  void check_comparable(const ExactScalar& other) const {
    if (basis_ && other.basis_ && basis_ != other.basis_ && !basis_->same_as(*other.basis_)) {
      raise(Errc::BasisMismatch, "cannot compare scalars over different bases");
    }
  }

  void normalize() {
    std::erase_if(coords_, [](const Coord& c) { return c.second == 0; });
    bool has_symbol = false;
    for (const auto& [idx, c] : coords_) {
      if (idx > 0) {
        has_symbol = true;
        break;
      }
    }
    if (!has_symbol) basis_.reset();
    if (has_symbol && !basis_) {
      raise(Errc::InternalError, "symbol coordinates without a basis");
    }
  }

  BasisPtr basis_;
  std::vector<Coord> coords_;  // sorted by index, no zero entries
};

/// Guarded three-way comparison of two scalar values.
inline int compare_guarded(const ExactScalar& a, const ExactScalar& b) { return (a - b).guarded_sign(); }

struct CanonicalLess {
  bool operator()(const ExactScalar& a, const ExactScalar& b) const { return ExactScalar::canonical_less(a, b); }
};

}  // namespace metriq
