#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "singlab/error.hpp"

namespace singlab {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical num/den; mpq_class(num, den) alone does not reduce.
inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const Rational& q) { return sgn(q); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

/// Parses "p", "-p" or "p/q" with integer p, q.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) fail(ErrorKind::Parse, "empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  const auto slash = s.find('/');
  auto valid_int = [](std::string_view v) {
    if (!v.empty() && v.front() == '-') v.remove_prefix(1);
    if (v.empty()) return false;
    for (char c : v)
      if (c < '0' || c > '9') return false;
    return true;
  };
  // Plain decimals ("0.25") are accepted and converted exactly.
  if (slash == std::string::npos && s.find('.') != std::string::npos) {
    const auto dot = s.find('.');
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    const bool neg = !whole.empty() && whole.front() == '-';
    if (neg) whole.erase(whole.begin());
    if (whole.empty()) whole = "0";
    if (!valid_int(whole) || (!frac.empty() && !valid_int(frac)) ||
        (!frac.empty() && frac.front() == '-'))
      fail(ErrorKind::Parse, "malformed rational literal '" + s + "'");
    Integer den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational r(Integer(whole + frac), den);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }
  if (slash == std::string::npos) {
    if (!valid_int(s)) fail(ErrorKind::Parse, "malformed rational literal '" + s + "'");
    return Rational(Integer(s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-')
    fail(ErrorKind::Parse, "malformed rational literal '" + s + "'");
  Integer d(den);
  if (d == 0) fail(ErrorKind::Parse, "zero denominator in '" + s + "'");
  Rational r(Integer(num), d);
  r.canonicalize();
  return r;
}

inline Rational pow(const Rational& base, unsigned e) {
  Rational out(1);
  Rational b = base;
  while (e > 0) {
    if (e & 1u) out *= b;
    b *= b;
    e >>= 1u;
  }
  return out;
}

inline Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

/// Exact rational equal to the given finite double.
inline Rational from_double(double x) { return Rational(x); }

/// Dyadic rational k / 2^bits nearest (downward) to x.
inline Rational dyadic(double x, unsigned bits) {
  Rational scaled(x);
  scaled *= pow(Rational(2), bits);
  return Rational(floor(scaled)) / pow(Rational(2), bits);
}

}  // namespace singlab
