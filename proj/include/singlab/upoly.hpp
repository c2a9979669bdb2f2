#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "singlab/error.hpp"
#include "singlab/interval.hpp"
#include "singlab/polynomial.hpp"
#include "singlab/rational.hpp"

namespace singlab {

/// Dense univariate polynomial; coeffs[k] multiplies x^k, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly constant(const Rational& v) { return UPoly({v}); }
  static UPoly x() { return UPoly({Rational(0), Rational(1)}); }

  /// Converts a polynomial that involves at most the variable `var`.
  static UPoly from_polynomial(const Polynomial& p, std::size_t var) {
    std::vector<Rational> c;
    for (const auto& [e, coef] : p.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i)
        if (i != var && e[i] != 0)
          fail(ErrorKind::VariableMismatch, "polynomial is not univariate in '" + p.ring().name(var) + "'");
      const auto k = e[var];
      if (c.size() <= k) c.resize(k + 1);
      c[k] += coef;
    }
    return UPoly(std::move(c));
  }

  Polynomial to_polynomial(const RingPtr& ring, std::size_t var) const {
    Polynomial p(ring);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      Exponents e(ring->size(), 0);
      e[var] = static_cast<std::uint32_t>(k);
      p.add_term(e, c_[k]);
    }
    return p;
  }

  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const Rational& lead() const { return c_.back(); }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  double operator()(double x) const {
    double acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + to_double(c_[k]);
    return acc;
  }

  RInterval operator()(const RInterval& x) const {
    RInterval acc(Rational(0));
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + RInterval(c_[k]);
    return acc;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<unsigned long>(k);
    return UPoly(std::move(d));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(k) + b.coeff(k);
    return UPoly(std::move(r));
  }

  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(k) - b.coeff(k);
    return UPoly(std::move(r));
  }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }

  friend UPoly operator*(const Rational& s, const UPoly& a) {
    std::vector<Rational> r = a.c_;
    for (auto& v : r) v *= s;
    return UPoly(std::move(r));
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) fail(ErrorKind::ZeroPolynomial, "division by zero polynomial");
    if (a.degree() < b.degree()) return {UPoly{}, a};
    std::vector<Rational> r = a.c_;
    std::vector<Rational> q(a.c_.size() - b.c_.size() + 1);
    const auto db = b.c_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      const Rational f = r[k + db] / b.c_.back();
      q[k] = f;
      if (f == 0) continue;
      for (std::size_t j = 0; j <= db; ++j) r[k + j] -= f * b.c_[j];
    }
    r.resize(db);
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    return (Rational(1) / lead()) * *this;
  }

  std::string to_string(const std::string& var = "x") const {
    RingPtr ring = make_ring({var});
    return to_polynomial(ring, 0).to_string();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Yun's square-free decomposition: p = lc * prod factors[i]^(i+1), each
/// factor monic and square-free, pairwise coprime.
inline std::vector<UPoly> squarefree_decomposition(const UPoly& p) {
  if (p.is_zero()) fail(ErrorKind::ZeroPolynomial, "square-free decomposition of zero");
  std::vector<UPoly> out;
  if (p.degree() == 0) return out;
  UPoly a = p.monic();
  UPoly d = a.derivative();
  UPoly g = gcd(a, d);
  UPoly b = divmod(a, g).first;
  UPoly c = divmod(d, g).first;
  UPoly e = c - b.derivative();
  while (b.degree() > 0) {
    UPoly h = gcd(b, e);
    out.push_back(h);
    b = divmod(b, h).first;
    c = divmod(e, h).first;
    e = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

inline UPoly squarefree_part(const UPoly& p) {
  UPoly s = UPoly::constant(1);
  for (const auto& f : squarefree_decomposition(p)) s = s * f;
  return s;
}

/// Sturm chain of a square-free polynomial.
class SturmChain {
 public:
  explicit SturmChain(const UPoly& p) {
    if (p.is_zero()) fail(ErrorKind::ZeroPolynomial, "Sturm chain of zero");
    chain_.push_back(p);
    if (p.degree() == 0) return;
    chain_.push_back(p.derivative());
    while (true) {
      UPoly r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
      if (r.is_zero()) break;
      chain_.push_back(Rational(-1) * r);
    }
  }

  const UPoly& base() const { return chain_.front(); }

  int variations(const Rational& x) const {
    int count = 0, last = 0;
    for (const auto& q : chain_) {
      const int s = sign(q(x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  int variations_at_infinity(bool positive) const {
    int count = 0, last = 0;
    for (const auto& q : chain_) {
      int s = sign(q.lead());
      if (!positive && q.degree() % 2 == 1) s = -s;
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  /// Distinct roots in the half-open interval (a, b].
  int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

  int count_all() const { return variations_at_infinity(false) - variations_at_infinity(true); }

 private:
  std::vector<UPoly> chain_;
};

/// Open interval (lo, hi) holding exactly one distinct real root; the
/// square-free part does not vanish at either endpoint.
struct IsolatingInterval {
  Rational lo, hi;
  unsigned multiplicity = 1;

  RInterval as_interval() const { return {lo, hi}; }
  double approx() const { return to_double((lo + hi) / 2); }
};

/// Power of two bounding the modulus of every complex root (Cauchy).
inline Rational root_bound(const UPoly& p) {
  if (p.degree() <= 0) return Rational(1);
  Rational m(0);
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coeff(static_cast<std::size_t>(k)) / p.lead())));
  Rational b(1);
  while (b < m + 1) b *= 2;
  return b;
}

namespace detail {

inline IsolatingInterval around_exact_root(const SturmChain& sc, const Rational& r, Rational eps) {
  for (;;) {
    const Rational lo = r - eps, hi = r + eps;
    if (sign(sc.base()(lo)) != 0 && sign(sc.base()(hi)) != 0 && sc.count(lo, hi) == 1) return {lo, hi, 1};
    eps /= 2;
  }
}

/// Exactly one root in (a, b]; produce a normalized open interval.
inline IsolatingInterval finalize_root(const SturmChain& sc, Rational a, Rational b) {
  const UPoly& s = sc.base();
  for (;;) {
    if (sign(s(b)) == 0) return around_exact_root(sc, b, (b - a) / 4);
    if (sign(s(a)) != 0) return {a, b, 1};
    Rational m = (a + b) / 2;
    if (sign(s(m)) == 0) {
      if (sc.count(a, m) == 1) return around_exact_root(sc, m, (m - a) / 4);
      a = m;
      continue;
    }
    if (sc.count(m, b) == 1) a = m;
    else b = m;
  }
}

inline void isolate_rec(const SturmChain& sc, const Rational& a, const Rational& b, int k,
                        std::vector<IsolatingInterval>& out) {
  if (k <= 0) return;
  if (k == 1) {
    out.push_back(finalize_root(sc, a, b));
    return;
  }
  const Rational m = (a + b) / 2;
  const int left = sc.count(a, m);
  isolate_rec(sc, a, m, left, out);
  isolate_rec(sc, m, b, k - left, out);
}

}  // namespace detail

/// Isolates the distinct real roots of p lying in the closed window [lo, hi].
/// Multiplicities come from the square-free decomposition.  Intervals are
/// returned in increasing order and are pairwise disjoint.
inline std::vector<IsolatingInterval> isolate_real_roots(const UPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) fail(ErrorKind::ZeroPolynomial, "isolate_real_roots: zero polynomial");
  if (lo > hi) fail(ErrorKind::Precondition, "isolate_real_roots: empty window");
  const auto factors = squarefree_decomposition(p);
  if (factors.empty()) return {};
  UPoly s = UPoly::constant(1);
  for (const auto& f : factors) s = s * f;
  const SturmChain sc(s);
  std::vector<IsolatingInterval> out;
  if (sign(s(lo)) == 0) {
    const Rational eps = hi > lo ? (hi - lo) / 4 : Rational(1, 4);
    out.push_back(detail::around_exact_root(sc, lo, eps));
  }
  if (hi > lo) detail::isolate_rec(sc, lo, hi, sc.count(lo, hi), out);
  for (auto& iv : out) {
    iv.multiplicity = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].degree() <= 0) continue;
      const SturmChain fc(factors[i]);
      if (fc.count(iv.lo, iv.hi) > 0 || sign(factors[i](iv.lo)) == 0) {
        iv.multiplicity = static_cast<unsigned>(i + 1);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  return out;
}

/// All real roots.
inline std::vector<IsolatingInterval> isolate_real_roots(const UPoly& p) {
  const Rational b = root_bound(p);
  return isolate_real_roots(p, -b, b);
}

/// Number of distinct real roots of p in the closed interval [lo, hi].
inline int count_real_roots(const UPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) fail(ErrorKind::ZeroPolynomial, "count_real_roots: zero polynomial");
  const UPoly s = squarefree_part(p);
  if (s.degree() <= 0) return 0;
  const SturmChain sc(s);
  return sc.count(lo, hi) + (sign(s(lo)) == 0 ? 1 : 0);
}

/// Bisects a normalized isolating interval of the square-free polynomial s
/// until it is narrower than `width`.
inline void refine(const UPoly& s, IsolatingInterval& iv, const Rational& width) {
  int slo = sign(s(iv.lo));
  while (iv.hi - iv.lo >= width) {
    const Rational m = (iv.lo + iv.hi) / 2;
    const int sm = sign(s(m));
    if (sm == 0) {
      const Rational eps = width / 4;
      iv.lo = m - eps;
      iv.hi = m + eps;
      // a simple root: s changes sign across it, so tighten until both sides are nonzero
      Rational e = eps;
      while (sign(s(m - e)) == 0 || sign(s(m + e)) == 0 || sign(s(m - e)) == sign(s(m + e))) e /= 2;
      iv.lo = m - e;
      iv.hi = m + e;
      return;
    }
    if (sm == slo) {
      iv.lo = m;
    } else {
      iv.hi = m;
    }
  }
}

}  // namespace singlab
