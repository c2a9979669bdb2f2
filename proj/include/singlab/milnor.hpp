#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "singlab/error.hpp"
#include "singlab/groebner.hpp"
#include "singlab/linalg.hpp"
#include "singlab/polynomial.hpp"

namespace singlab {

/// Local data of an isolated critical point at the origin.
struct GermAnalysis {
  Polynomial f;
  std::size_t n = 0;
  int order = 0;
  int mu = 0;
  /// Basis monomials of the local algebra, sorted by (degree, lex descending).
  std::vector<Exponents> cobasis;
  /// Reduced grevlex basis of the localized Jacobian ideal J + m^N.
  std::vector<Polynomial> jac_gb;
  int q_plus = 0;
  int q_minus = 0;
};

namespace detail {

inline std::vector<Polynomial> maximal_ideal_power(const RingPtr& ring, std::uint32_t degree) {
  std::vector<Polynomial> out;
  const std::size_t n = ring->size();
  Exponents e(n, 0);
  // enumerate compositions of `degree` into n parts
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i + 1 == n) {
      e[i] = left;
      out.push_back(Polynomial::monomial(ring, e, 1));
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (n > 0) rec(0, degree);
  return out;
}

inline void sort_cobasis(std::vector<Exponents>& mons) {
  std::sort(mons.begin(), mons.end(), [](const Exponents& a, const Exponents& b) {
    const auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a > b;
  });
}

}  // namespace detail

/// Milnor number, cobasis and quadratic signature of the germ of f at 0.
///
/// The Jacobian ideal must be zero-dimensional.  The local algebra at the
/// origin is obtained as R[z]/(J + m^N) for the first N where the dimension
/// stops growing, which discards critical points away from 0.
inline GermAnalysis analyze_germ(const Polynomial& f, const GroebnerOptions& opts = {}) {
  const RingPtr ring = f.ring_ptr();
  const std::size_t n = ring->size();
  if (n == 0 || f.is_zero() || f.is_constant())
    fail(ErrorKind::InvalidGerm, "germ must be a nonconstant polynomial in at least one variable");
  if (f.constant_term() != 0) fail(ErrorKind::InvalidGerm, "germ has a nonzero constant term");

  std::vector<Polynomial> partials;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial d = f.derivative(i);
    if (d.constant_term() != 0)
      fail(ErrorKind::NotCritical, "origin is not a critical point: d/d" + ring->name(i) + " is nonzero at 0");
    partials.push_back(std::move(d));
  }

  GermAnalysis a{f, n, f.order(), 0, {}, {}, 0, 0};

  std::vector<std::vector<Rational>> q(n, std::vector<Rational>(n));
  const Exponents zero(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = partials[i].derivative(j).coefficient(zero);
  std::tie(a.q_plus, a.q_minus) = inertia(q);

  std::vector<Polynomial> jac;
  for (const auto& p : partials)
    if (!p.is_zero()) jac.push_back(p);
  if (jac.empty()) fail(ErrorKind::NotIsolated, "all partial derivatives vanish identically");
  const auto order = MonomialOrder::grevlex();
  const auto global = groebner_basis(jac, order, opts);
  if (!is_zero_dimensional(global, order))
    fail(ErrorKind::NotIsolated, "Jacobian ideal is not zero-dimensional (Milnor number is infinite)");
  const std::size_t global_dim = staircase(global, order).size();

  std::size_t prev_dim = 0;
  std::vector<Polynomial> prev_gb;
  for (std::uint32_t N = 1; N <= global_dim + 2; ++N) {
    std::vector<Polynomial> gens = jac;
    for (auto& m : detail::maximal_ideal_power(ring, N)) gens.push_back(std::move(m));
    auto gb = groebner_basis(gens, order, opts);
    const std::size_t dim = staircase(gb, order).size();
    if (N > 1 && dim == prev_dim) {
      a.mu = static_cast<int>(prev_dim);
      a.jac_gb = std::move(prev_gb);
      a.cobasis = staircase(a.jac_gb, order);
      detail::sort_cobasis(a.cobasis);
      return a;
    }
    prev_dim = dim;
    prev_gb = std::move(gb);
  }
  fail(ErrorKind::NotIsolated, "local algebra dimension did not stabilize");
}

/// F(z, t) = f + sum t_k g_k over the ring (z_1..z_n, t_1..t_{mu-1}).
struct Unfolding {
  GermAnalysis analysis;
  std::vector<Exponents> deformation_monomials;  // g_1..g_{mu-1}, exponents in z
  RingPtr ring;
  Polynomial F;

  std::size_t n() const { return analysis.n; }
  std::size_t num_params() const { return deformation_monomials.size(); }
  std::size_t param_index(std::size_t k) const { return analysis.n + k; }  // t_{k+1}

  Polynomial g(std::size_t k) const {
    Exponents e(ring->size(), 0);
    std::copy(deformation_monomials.at(k).begin(), deformation_monomials.at(k).end(), e.begin());
    return Polynomial::monomial(ring, e, 1);
  }
};

inline std::string param_name(std::size_t k) { return "t" + std::to_string(k + 1); }

/// Miniversal unfolding built on the cobasis.  Germs of order 2 with mu > 1
/// must have their quadratic part split off by the caller.
inline Unfolding miniversal_unfolding(const GermAnalysis& a) {
  if (a.mu > 1 && a.order < 3)
    fail(ErrorKind::OrderTooLow,
         "germ has order " + std::to_string(a.order) + " with quadratic signature (" + std::to_string(a.q_plus) +
             "," + std::to_string(a.q_minus) + "); strip the nondegenerate quadratic part first");
  std::vector<std::string> names = a.f.ring().names();
  for (const auto& nm : names) {
    if (nm == "lambda") fail(ErrorKind::InvalidGerm, "variable name 'lambda' is reserved");
    if (nm.size() > 1 && nm[0] == 't' && std::all_of(nm.begin() + 1, nm.end(), [](unsigned char c) { return std::isdigit(c) != 0; }))
      fail(ErrorKind::InvalidGerm, "variable name '" + nm + "' clashes with unfolding parameters");
  }
  Unfolding u{a, {}, nullptr, Polynomial(a.f.ring_ptr())};
  for (const auto& m : a.cobasis)
    if (total_degree(m) > 0) u.deformation_monomials.push_back(m);
  for (std::size_t k = 0; k < u.deformation_monomials.size(); ++k) names.push_back(param_name(k));
  u.ring = make_ring(names);
  u.F = a.f.to_ring(u.ring);
  for (std::size_t k = 0; k < u.deformation_monomials.size(); ++k)
    u.F += Polynomial::variable(u.ring, u.param_index(k)) * u.g(k);
  if (a.order >= 3) {
    for (std::size_t i = 0; i < a.n; ++i) {
      Exponents zi(a.n, 0);
      zi[i] = 1;
      if (u.deformation_monomials.at(i) != zi)
        fail(ErrorKind::Precondition, "cobasis does not start with the coordinate functions");
    }
  }
  return u;
}

inline Unfolding unfold(const Polynomial& f, const GroebnerOptions& opts = {}) {
  return miniversal_unfolding(analyze_germ(f, opts));
}

}  // namespace singlab
