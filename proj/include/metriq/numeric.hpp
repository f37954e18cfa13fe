#pragma once

// Shared scalar types: exact rationals/integers (GMP) and high-precision
// reals (MPFR), plus the global working-precision knob.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdlib>
#include <string>

#include "metriq/error.hpp"

namespace metriq {

using Rational = boost::multiprecision::mpq_rational;
using Integer  = boost::multiprecision::mpz_int;
using Real     = boost::multiprecision::mpfr_float;

namespace precision {

inline constexpr int kMinDigits     = 30;
inline constexpr int kDefaultDigits = 50;

namespace detail {
inline int initial_digits() {
  if (const char* env = std::getenv("METRIQ_PRECISION")) {
    char* end   = nullptr;
    long parsed = std::strtol(env, &end, 10);
    if (end && *end == '\0' && parsed >= kMinDigits && parsed <= 100000) {
      return static_cast<int>(parsed);
    }
  }
  return kDefaultDigits;
}

inline int& slot() {
  static int digits = [] {
    int d = initial_digits();
    Real::default_precision(static_cast<unsigned>(d));
    return d;
  }();
  return digits;
}
}  // namespace detail

/// Current working precision in decimal digits (>= 30, default 50,
/// overridable via the METRIQ_PRECISION environment variable).
inline int digits() { return detail::slot(); }

inline void set_digits(int d) {
  if (d < kMinDigits) {
    raise(Errc::InvalidConfig,
          "precision must be at least " + std::to_string(kMinDigits) + " digits, got " + std::to_string(d));
  }
  detail::slot() = d;
  Real::default_precision(static_cast<unsigned>(d));
}

/// Comparison guard: unequal scalars evaluating closer than this are
/// reported as PrecisionExhausted instead of being ordered silently.
inline Real guard_epsilon() {
  return pow(Real(10), -(digits() - 10));
}

// Touching the slot during static initialization pins the MPFR default
// precision before any Real can be constructed.
inline const int kInitializedOnLoad = digits();

}  // namespace precision

/// Exact binomial coefficient.
inline Integer binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Integer r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

inline Integer rational_floor_num_den(const Rational&) = delete;

/// Parse "p/q", "-12", "3.25" (decimal expands exactly) into a rational.
inline Rational parse_rational(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) raise(Errc::ParseError, "empty rational literal");

  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = (s[pos] == '-');
    ++pos;
  }
  std::string body = s.substr(pos);
  if (body.empty()) raise(Errc::ParseError, "malformed rational literal '" + text + "'");

  auto all_digits = [](const std::string& t) {
    if (t.empty()) return false;
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };

  Rational value;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash);
    std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      raise(Errc::ParseError, "malformed rational literal '" + text + "'");
    }
    Integer d(den);
    if (d == 0) raise(Errc::ParseError, "zero denominator in '" + text + "'");
    value = Rational(Integer(num), d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string ip = body.substr(0, dot);
    std::string fp = body.substr(dot + 1);
    if (ip.empty() && fp.empty()) raise(Errc::ParseError, "malformed decimal literal '" + text + "'");
    if (!ip.empty() && !all_digits(ip)) raise(Errc::ParseError, "malformed decimal literal '" + text + "'");
    if (!fp.empty() && !all_digits(fp)) raise(Errc::ParseError, "malformed decimal literal '" + text + "'");
    Integer num = ip.empty() ? Integer(0) : Integer(ip);
    Integer den = 1;
    for (char c : fp) {
      num *= 10;
      num += (c - '0');
      den *= 10;
    }
    value = Rational(num, den);
  } else {
    if (!all_digits(body)) raise(Errc::ParseError, "malformed rational literal '" + text + "'");
    value = Rational(Integer(body));
  }
  return negative ? Rational(-value) : value;
}

/// Number of significant decimal digits in a plain decimal literal.
inline int significant_digits(const std::string& text) {
  int count = 0;
  bool seen_nonzero = false;
  for (char c : text) {
    if (c == 'e' || c == 'E') break;
    if (!std::isdigit(static_cast<unsigned char>(c))) continue;
    if (c != '0') seen_nonzero = true;
    if (seen_nonzero) ++count;
  }
  return count;
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// q0^e for integer e >= 0, exact.
inline Rational rational_pow(const Rational& q0, unsigned long e) {
  Rational r = 1;
  Rational base = q0;
  while (e > 0) {
    if (e & 1UL) r *= base;
    base *= base;
    e >>= 1UL;
  }
  return r;
}

inline int sign_of(const Rational& r) { return r.sign(); }

}  // namespace metriq
