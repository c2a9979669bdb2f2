#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "singlab/error.hpp"
#include "singlab/polynomial.hpp"
#include "singlab/rational.hpp"

namespace singlab {

/// Power series in t truncated modulo t^precision.
class Series {
 public:
  explicit Series(std::size_t precision = 0) : c_(precision) {}

  static Series monomial(std::size_t precision, long exponent, const Rational& coef) {
    Series s(precision);
    if (exponent >= 0 && static_cast<std::size_t>(exponent) < precision) s.c_[static_cast<std::size_t>(exponent)] = coef;
    return s;
  }

  /// Univariate polynomial in the only variable of its ring.
  static Series from_polynomial(const Polynomial& p, std::size_t precision) {
    if (p.ring().size() != 1) fail(ErrorKind::VariableMismatch, "series need a univariate polynomial");
    Series s(precision);
    for (const auto& [e, c] : p.terms())
      if (e[0] < precision) s.c_[e[0]] += c;
    return s;
  }

  std::size_t precision() const { return c_.size(); }
  const Rational& operator[](std::size_t k) const { return c_.at(k); }
  Rational& operator[](std::size_t k) { return c_.at(k); }

  /// Order of vanishing; -1 when the series is zero to this precision.
  long order() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != 0) return static_cast<long>(k);
    return -1;
  }

  const Rational& lead() const {
    const long o = order();
    if (o < 0) fail(ErrorKind::ZeroPolynomial, "leading coefficient of a zero series");
    return c_[static_cast<std::size_t>(o)];
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series r(std::min(a.precision(), b.precision()));
    for (std::size_t k = 0; k < r.precision(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }

  friend Series operator-(const Series& a, const Series& b) {
    Series r(std::min(a.precision(), b.precision()));
    for (std::size_t k = 0; k < r.precision(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
  }

  friend Series operator*(const Series& a, const Series& b) {
    Series r(std::min(a.precision(), b.precision()));
    for (std::size_t i = 0; i < r.precision(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; i + j < r.precision(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  friend Series operator*(const Rational& s, Series a) {
    for (auto& v : a.c_) v *= s;
    return a;
  }

  /// Drops the first k coefficients (division by t^k); precision shrinks.
  Series shift_down(std::size_t k) const {
    Series r(c_.size() > k ? c_.size() - k : 0);
    for (std::size_t i = 0; i < r.precision(); ++i) r.c_[i] = c_[i + k];
    return r;
  }

  Series truncate(std::size_t precision) const {
    Series r(std::min(precision, c_.size()));
    for (std::size_t i = 0; i < r.precision(); ++i) r.c_[i] = c_[i];
    return r;
  }

  Series inverse() const {
    if (c_.empty() || c_[0] == 0) fail(ErrorKind::Precondition, "series is not a unit");
    Series r(c_.size());
    r.c_[0] = Rational(1) / c_[0];
    for (std::size_t k = 1; k < c_.size(); ++k) {
      Rational acc(0);
      for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
      r.c_[k] = -acc * r.c_[0];
    }
    return r;
  }

  /// Integer power; negative exponents need a unit.
  Series pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Series out = Series::monomial(c_.size(), 0, Rational(1));
    Series b = *this;
    while (e > 0) {
      if (e & 1) out = out * b;
      b = b * b;
      e >>= 1;
    }
    return out;
  }

  std::string to_string(const std::string& var = "t", std::size_t max_terms = 8) const {
    std::string s;
    std::size_t shown = 0;
    for (std::size_t k = 0; k < c_.size() && shown < max_terms; ++k) {
      if (c_[k] == 0) continue;
      const Rational& c = c_[k];
      std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
      std::string coef = singlab::to_string(abs(c));
      std::string term = mono.empty() ? coef : (abs(c) == 1 ? mono : coef + "*" + mono);
      if (shown == 0) s += (c < 0 ? "-" : "") + term;
      else s += (c < 0 ? " - " : " + ") + term;
      ++shown;
    }
    if (s.empty()) s = "0";
    return s + " + O(" + var + "^" + std::to_string(c_.size()) + ")";
  }

 private:
  std::vector<Rational> c_;
};

}  // namespace singlab
