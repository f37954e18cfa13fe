#pragma once

// Generalized polynomials in q: finite sums of rational coefficients times
// q^e, where the exponents e are nonnegative ExactScalars. LambdaPoly layers
// a dense polynomial in a formal variable (lambda or mu) over this ring.

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "metriq/error.hpp"
#include "metriq/exact_scalar.hpp"
#include "metriq/numeric.hpp"

namespace metriq {

struct GPTerm {
  ExactScalar exponent;
  Rational coeff;
};

class GenPoly {
 public:
  GenPoly() = default;

  static GenPoly zero() { return GenPoly(); }

  static GenPoly constant(const Rational& c) {
    GenPoly p;
    if (c != 0) p.terms_.push_back({ExactScalar(), c});
    return p;
  }

  static GenPoly one() { return constant(1); }

  static GenPoly monomial(const Rational& coeff, const ExactScalar& exp) {
    require_nonnegative(exp);
    GenPoly p;
    if (coeff != 0) {
      p.basis_ = exp.basis();
      p.terms_.push_back({exp, coeff});
    }
    return p;
  }

  static GenPoly from_terms(std::vector<GPTerm> terms) {
    for (const auto& t : terms) require_nonnegative(t.exponent);
    return from_raw(std::move(terms));
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<GPTerm>& terms() const { return terms_; }
  const BasisPtr& basis() const { return basis_; }
  bool rational_exponents() const { return basis_ == nullptr; }

  friend GenPoly operator+(const GenPoly& f, const GenPoly& g) {
    SymbolBasis::merge(f.basis_, g.basis_);
    std::vector<GPTerm> all;
    all.reserve(f.terms_.size() + g.terms_.size());
    all.insert(all.end(), f.terms_.begin(), f.terms_.end());
    all.insert(all.end(), g.terms_.begin(), g.terms_.end());
    return from_raw(std::move(all));
  }

  friend GenPoly operator-(const GenPoly& f, const GenPoly& g) { return f + (-g); }

  GenPoly operator-() const {
    GenPoly r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend GenPoly operator*(const GenPoly& f, const GenPoly& g) {
    if (f.is_zero() || g.is_zero()) return GenPoly();
    SymbolBasis::merge(f.basis_, g.basis_);
    std::vector<GPTerm> prod;
    prod.reserve(f.terms_.size() * g.terms_.size());
    for (const auto& a : f.terms_) {
      for (const auto& b : g.terms_) {
        prod.push_back({a.exponent + b.exponent, a.coeff * b.coeff});
      }
    }
    return from_raw(std::move(prod));
  }

  GenPoly scaled(const Rational& c) const {
    if (c == 0) return GenPoly();
    GenPoly r(*this);
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  /// Exact division of every coefficient by a nonzero integer.
  GenPoly divided_by(long k) const {
    if (k == 0) raise(Errc::DomainError, "division of coefficients by zero");
    return scaled(Rational(1, k));
  }

  bool operator==(const GenPoly& other) const {
    if (terms_.size() != other.terms_.size()) return false;
    SymbolBasis::merge(basis_, other.basis_);
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].coeff != other.terms_[i].coeff) return false;
      if (terms_[i].exponent != other.terms_[i].exponent) return false;
    }
    return true;
  }
  bool operator!=(const GenPoly& other) const { return !(*this == other); }

  /// Sum of coefficients = exact evaluation at q = 1.
  Rational coefficient_sum() const {
    Rational s = 0;
    for (const auto& t : terms_) s += t.coeff;
    return s;
  }

  bool has_constant_term() const { return !terms_.empty() && terms_.front().exponent.is_zero(); }

  /// Rational coefficient of a given exponent (0 when absent).
  Rational coefficient_of(const ExactScalar& exp) const {
    for (const auto& t : terms_) {
      if (t.exponent == exp) return t.coeff;
    }
    return Rational(0);
  }

  Real eval(const Real& q0) const {
    if (!(q0 > 0)) raise(Errc::DomainError, "gp_eval requires q0 > 0");
    Real acc = 0;
    for (const auto& t : terms_) {
      acc += Real(t.coeff) * pow(q0, t.exponent.numeric());
    }
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      bool negative = t.coeff < 0;
      Rational mag = negative ? Rational(-t.coeff) : t.coeff;
      std::string piece;
      if (t.exponent.is_zero()) {
        piece = mag.str();
      } else {
        std::string base;
        if (t.exponent.is_rational() && is_integer(t.exponent.rational_value())) {
          Rational e = t.exponent.rational_value();
          base = (e == 1) ? "q" : "q^" + e.str();
        } else {
          base = "q^[" + t.exponent.to_string() + "]";
        }
        piece = (mag == 1) ? base : mag.str() + "*" + base;
      }
      if (out.empty()) {
        out = negative ? "-" + piece : piece;
      } else {
        out += negative ? " - " + piece : " + " + piece;
      }
    }
    return out;
  }

  /// Normalize a raw term list that is already known to have valid exponents.
  static GenPoly from_raw(std::vector<GPTerm> terms) {
    GenPoly p;
    for (const auto& t : terms) p.basis_ = SymbolBasis::merge(p.basis_, t.exponent.basis());
    if (terms.empty()) return p;

    std::vector<std::pair<double, std::uint32_t>> order(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      order[i] = {terms[i].exponent.approx(), static_cast<std::uint32_t>(i)};
    }
    std::sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first < y.first;
      return ExactScalar::lex_compare(terms[x.second].exponent.coords(), terms[y.second].exponent.coords()) < 0;
    });

    p.terms_.reserve(terms.size());
    for (const auto& [key, idx] : order) {
      GPTerm& t = terms[idx];
      if (t.coeff == 0) continue;
      if (!p.terms_.empty() && p.terms_.back().exponent == t.exponent) {
        p.terms_.back().coeff += t.coeff;
        if (p.terms_.back().coeff == 0) p.terms_.pop_back();
      } else {
        p.terms_.push_back(std::move(t));
      }
    }
    if (p.terms_.empty()) p.basis_.reset();
    return p;
  }

 private:
  static void require_nonnegative(const ExactScalar& exp) {
    if (exp.is_zero()) return;
    if (exp.is_rational()) {
      if (exp.rational_value() < 0) {
        raise(Errc::DomainError, "negative exponent " + exp.to_string() + " in generalized polynomial");
      }
      return;
    }
    if (exp.approx() > 1e-9) return;
    if (exp.guarded_sign() < 0) {
      raise(Errc::DomainError, "negative exponent " + exp.to_string() + " in generalized polynomial");
    }
  }

  BasisPtr basis_;
  std::vector<GPTerm> terms_;  // canonical order, merged, no zero coefficients
};

/// Collects raw terms across many products and normalizes once.
class GenPolyAccumulator {
 public:
  void add(const GenPoly& p) {
    const auto& ts = p.terms();
    raw_.insert(raw_.end(), ts.begin(), ts.end());
  }

  void add_term(ExactScalar exp, Rational coeff) { raw_.push_back({std::move(exp), std::move(coeff)}); }

  /// Append all |f|*|g| term products of f*g.
  void add_product(const GenPoly& f, const GenPoly& g) {
    SymbolBasis::merge(f.basis(), g.basis());
    for (const auto& a : f.terms()) {
      for (const auto& b : g.terms()) {
        raw_.push_back({a.exponent + b.exponent, a.coeff * b.coeff});
      }
    }
  }

  GenPoly take() { return GenPoly::from_raw(std::move(raw_)); }

 private:
  std::vector<GPTerm> raw_;
};

inline GenPoly gp_add(const GenPoly& f, const GenPoly& g) { return f + g; }
inline GenPoly gp_mul(const GenPoly& f, const GenPoly& g) { return f * g; }
inline Real gp_eval(const GenPoly& f, const Real& q0) { return f.eval(q0); }

/// Dense polynomial in a formal variable whose coefficients are GenPolys.
class LambdaPoly {
 public:
  LambdaPoly() = default;
  explicit LambdaPoly(std::vector<GenPoly> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const std::vector<GenPoly>& coeffs() const { return coeffs_; }

  const GenPoly& coeff(std::size_t k) const {
    static const GenPoly kZero;
    return k < coeffs_.size() ? coeffs_[k] : kZero;
  }

  /// p(x) -> p(x + delta), exact binomial substitution via Horner steps.
  LambdaPoly shifted(long delta) const {
    std::vector<GenPoly> res;
    for (std::size_t j = coeffs_.size(); j-- > 0;) {
      // res <- res * (x + delta) + c_j
      std::vector<GenPoly> next(res.size() + 1);
      for (std::size_t i = 0; i < res.size(); ++i) {
        next[i + 1] = next[i + 1] + res[i];
        next[i] = next[i] + res[i].scaled(Rational(delta));
      }
      if (next.empty()) next.resize(1);
      next[0] = next[0] + coeffs_[j];
      res = std::move(next);
    }
    if (res.empty()) res.resize(coeffs_.size());
    while (res.size() < coeffs_.size()) res.emplace_back();
    return LambdaPoly(std::move(res));
  }

  Real eval(const Real& q0, const Real& x0) const {
    Real acc = 0;
    for (std::size_t j = coeffs_.size(); j-- > 0;) {
      acc = acc * x0 + coeffs_[j].eval(q0);
    }
    return acc;
  }

  bool operator==(const LambdaPoly& other) const {
    std::size_t m = std::max(coeffs_.size(), other.coeffs_.size());
    for (std::size_t k = 0; k < m; ++k) {
      if (coeff(k) != other.coeff(k)) return false;
    }
    return true;
  }
  bool operator!=(const LambdaPoly& other) const { return !(*this == other); }

  std::string to_string(const std::string& var = "λ") const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const GenPoly& c = coeffs_[k];
      if (c.is_zero()) continue;
      std::string var_part;
      if (k >= 2) {
        var_part = var + "^" + std::to_string(k);
      } else if (k == 1) {
        var_part = var;
      }

      bool negative = false;
      std::string piece;
      if (c.term_count() == 1) {
        const GPTerm& t = c.terms().front();
        negative = t.coeff < 0;
        Rational mag = negative ? Rational(-t.coeff) : t.coeff;
        GenPoly m = GenPoly::monomial(mag, t.exponent);
        if (k == 0) {
          piece = m.to_string();
        } else if (m == GenPoly::one()) {
          piece = var_part;
        } else {
          piece = m.to_string() + "*" + var_part;
        }
      } else {
        // multi-term coefficient: parenthesize; factor a leading minus
        negative = c.terms().front().coeff < 0;
        GenPoly inner = negative ? -c : c;
        piece = "(" + inner.to_string() + ")";
        if (k > 0) piece += "*" + var_part;
      }

      if (out.empty()) {
        out = negative ? "-" + piece : piece;
      } else {
        out += negative ? " - " + piece : " + " + piece;
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::vector<GenPoly> coeffs_;  // index = power of the formal variable
};

/// mu-form -> lambda-form: returns p with p(q; lambda) = pbar(q; lambda - 1).
inline LambdaPoly lp_shift(const LambdaPoly& pbar) { return pbar.shifted(-1); }

/// lambda-form -> mu-form: returns pbar with pbar(q; mu) = p(q; mu + 1).
inline LambdaPoly lp_unshift(const LambdaPoly& p) { return p.shifted(1); }

}  // namespace metriq
