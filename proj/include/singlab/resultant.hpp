#pragma once

#include <utility>
#include <vector>

#include "singlab/error.hpp"
#include "singlab/polynomial.hpp"

namespace singlab {

/// Exact quotient a / b; fails if b does not divide a.
inline Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) fail(ErrorKind::ZeroPolynomial, "exact_divide by zero");
  Polynomial q(a.ring_ptr());
  Polynomial r = a;
  // lex-largest term of a std::map keyed by exponent vectors is the last one
  const auto& [lb, cb] = *b.terms().rbegin();
  while (!r.is_zero()) {
    const auto& [lr, cr] = *r.terms().rbegin();
    if (!divides(lb, lr)) fail(ErrorKind::Precondition, "exact_divide: division is not exact");
    Polynomial t = Polynomial::monomial(a.ring_ptr(), lr - lb, cr / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

namespace detail {

/// Polynomial viewed as univariate in one variable with polynomial coefficients.
struct VarPoly {
  std::vector<Polynomial> c;  // c[k] multiplies var^k; no trailing zeros
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Polynomial& lead() const { return c.back(); }
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
};

inline VarPoly split(const Polynomial& p, std::size_t var) {
  VarPoly v{p.coefficients_in(var)};
  v.trim();
  return v;
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
inline VarPoly pseudo_remainder(VarPoly a, const VarPoly& b) {
  const int db = b.degree();
  int e = a.degree() - db + 1;
  while (a.degree() >= db && !a.c.empty()) {
    const int shift = a.degree() - db;
    const Polynomial la = a.lead();
    for (auto& x : a.c) x = x * b.lead();
    for (int j = 0; j <= db; ++j) a.c[static_cast<std::size_t>(j + shift)] -= la * b.c[static_cast<std::size_t>(j)];
    a.trim();
    --e;
  }
  if (e > 0) {
    const Polynomial f = b.lead().pow(static_cast<unsigned>(e));
    for (auto& x : a.c) x = x * f;
  }
  return a;
}

}  // namespace detail

/// Resultant with respect to `var`, by the subresultant pseudo-remainder
/// sequence (all divisions exact).  The sign follows the Sylvester matrix
/// convention Res(p, q) = lc(p)^deg q * prod q(roots of p).
inline Polynomial resultant(const Polynomial& p, const Polynomial& q, std::size_t var) {
  if (!(p.ring() == q.ring())) fail(ErrorKind::VariableMismatch, "resultant: different variable lists");
  const RingPtr ring = p.ring_ptr();
  detail::VarPoly a = detail::split(p, var);
  detail::VarPoly b = detail::split(q, var);
  if (a.degree() < 1 || b.degree() < 1)
    fail(ErrorKind::DegreeZero, "resultant: both inputs need positive degree in '" + ring->name(var) + "'");

  Rational s(1);
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
  }
  Polynomial g = Polynomial::constant(ring, 1);
  Polynomial h = Polynomial::constant(ring, 1);
  for (;;) {
    const int delta = a.degree() - b.degree();
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
    detail::VarPoly r = detail::pseudo_remainder(a, b);
    a = b;
    if (r.c.empty()) return Polynomial(ring);
    const Polynomial divisor = g * h.pow(static_cast<unsigned>(delta));
    for (auto& x : r.c) x = exact_divide(x, divisor);
    b = std::move(r);
    g = a.lead();
    // h <- g^delta / h^(delta - 1)
    if (delta == 0) {
      h = h * Polynomial::constant(ring, 1);
    } else {
      h = exact_divide(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
    if (b.degree() <= 0) break;
  }
  // h <- lc(b)^deg a / h^(deg a - 1)
  const int da = a.degree();
  Polynomial res = b.lead().pow(static_cast<unsigned>(da));
  if (da >= 1) res = exact_divide(res, h.pow(static_cast<unsigned>(da - 1)));
  return res * s;
}

inline Polynomial resultant(const Polynomial& p, const Polynomial& q, const std::string& var) {
  return resultant(p, q, p.ring().index_of(var));
}

}  // namespace singlab
