#pragma once

#include <algorithm>
#include <vector>

#include "singlab/polynomial.hpp"
#include "singlab/rational.hpp"

namespace singlab {

/// Closed interval with exact rational endpoints.
struct RInterval {
  Rational lo, hi;

  RInterval() = default;
  RInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}
  explicit RInterval(const Rational& x) : lo(x), hi(x) {}

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  double approx() const { return to_double(mid()); }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }

  /// +1 or -1 when the interval excludes zero, 0 otherwise.
  int sign() const {
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    return 0;
  }

  bool disjoint(const RInterval& o) const { return hi < o.lo || o.hi < lo; }

  friend RInterval operator+(const RInterval& a, const RInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend RInterval operator-(const RInterval& a, const RInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
  friend RInterval operator-(const RInterval& a) { return {-a.hi, -a.lo}; }

  friend RInterval operator*(const RInterval& a, const RInterval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
  }

  friend RInterval operator*(const Rational& s, const RInterval& a) {
    return s >= 0 ? RInterval{s * a.lo, s * a.hi} : RInterval{s * a.hi, s * a.lo};
  }
};

inline RInterval pow(const RInterval& x, unsigned e) {
  if (e == 0) return RInterval(Rational(1));
  if (e % 2 == 1) return {singlab::pow(x.lo, e), singlab::pow(x.hi, e)};
  const Rational a = singlab::pow(x.lo, e), b = singlab::pow(x.hi, e);
  if (x.contains_zero()) return {Rational(0), std::max(a, b)};
  return {std::min(a, b), std::max(a, b)};
}

/// Natural interval extension of a polynomial over a box.
inline RInterval evaluate(const Polynomial& p, const std::vector<RInterval>& box) {
  RInterval total(Rational(0));
  for (const auto& [e, c] : p.terms()) {
    RInterval m(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) m = m * pow(box.at(i), e[i]);
    total = total + m;
  }
  return total;
}

}  // namespace singlab
