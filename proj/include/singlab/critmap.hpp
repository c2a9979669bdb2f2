#pragma once

#include <string>
#include <vector>

#include "singlab/error.hpp"
#include "singlab/linalg.hpp"
#include "singlab/milnor.hpp"
#include "singlab/polynomial.hpp"

namespace singlab {

/// Equations of the critical locus C and the projection p∘ν written in the
/// chart coordinates (z_1..z_n, t_{n+1}..t_{mu-1}) of C.
struct CriticalSystem {
  std::vector<Polynomial> equations;       // dF/dz_i
  std::vector<Polynomial> chart_map;       // mu-1 components
  std::vector<std::size_t> chart_coords;   // ring indices of the chart coordinates
};

struct HessianData {
  PolyMatrix H;
  Polynomial h;
};

struct JacobianIdentity {
  bool holds = false;
  Polynomial jacobian;        // jac(p∘ν)
  Polynomial signed_hessian;  // (-1)^n h_z(F)
};

inline void require_order_three(const Unfolding& u) {
  if (u.analysis.order < 3 || u.num_params() < u.n())
    fail(ErrorKind::OrderTooLow, "critical-locus chart needs a germ of order >= 3");
}

inline CriticalSystem critical_system(const Unfolding& u) {
  require_order_three(u);
  const std::size_t n = u.n();
  const std::size_t m = u.num_params();
  CriticalSystem cs;
  for (std::size_t i = 0; i < n; ++i) cs.equations.push_back(u.F.derivative(i));

  // t_1..t_n enter linearly with unit coefficients, so C is a graph over the chart
  for (std::size_t i = 0; i < n; ++i) {
    const Polynomial rest = cs.equations[i] - Polynomial::variable(u.ring, u.param_index(i));
    for (std::size_t j = 0; j < n; ++j)
      if (rest.degree_in(u.param_index(j)) > 0)
        fail(ErrorKind::IdentityViolation, "critical equation " + std::to_string(i + 1) +
                                               " is not linear in t_1..t_n with unit coefficients");
  }

  for (std::size_t j = 0; j < n; ++j) {
    cs.chart_map.push_back(-(cs.equations[j] - Polynomial::variable(u.ring, u.param_index(j))));
    cs.chart_coords.push_back(j);
  }
  for (std::size_t k = n; k < m; ++k) {
    cs.chart_map.push_back(Polynomial::variable(u.ring, u.param_index(k)));
    cs.chart_coords.push_back(u.param_index(k));
  }
  return cs;
}

inline HessianData hessian(const Unfolding& u) {
  const std::size_t n = u.n();
  PolyMatrix H(n, std::vector<Polynomial>(n, Polynomial(u.ring)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) H[i][j] = u.F.derivative(i).derivative(j);
  Polynomial h = determinant(H, u.ring);
  return HessianData{std::move(H), std::move(h)};
}

/// Computes jac(p∘ν) from the full Jacobian matrix of the chart map and
/// compares it with (-1)^n h_z(F).  The lower-left block must vanish and the
/// lower-right block must be the identity; the determinant is then the
/// determinant of the upper-left block.
inline JacobianIdentity verify_jacobian_identity(const Unfolding& u) {
  const CriticalSystem cs = critical_system(u);
  const std::size_t n = u.n();
  const std::size_t dim = cs.chart_map.size();
  PolyMatrix jac(dim, std::vector<Polynomial>(dim, Polynomial(u.ring)));
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) jac[r][c] = cs.chart_map[r].derivative(cs.chart_coords[c]);

  for (std::size_t r = n; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      const bool expect_one = (c == r);
      const Polynomial& e = jac[r][c];
      const bool ok = expect_one ? (e == Polynomial::constant(u.ring, 1)) : e.is_zero();
      if (!ok) fail(ErrorKind::IdentityViolation, "Jacobian of the chart map is not block upper triangular");
    }

  PolyMatrix upper(n, std::vector<Polynomial>(n, Polynomial(u.ring)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) upper[r][c] = jac[r][c];

  Polynomial jacobian = determinant(std::move(upper), u.ring);
  const HessianData hd = hessian(u);
  Polynomial signed_hessian = (n % 2 == 0) ? hd.h : -hd.h;
  const bool holds = (jacobian == signed_hessian);
  return JacobianIdentity{holds, std::move(jacobian), std::move(signed_hessian)};
}

inline JacobianIdentity require_jacobian_identity(const Unfolding& u) {
  auto id = verify_jacobian_identity(u);
  if (!id.holds)
    fail(ErrorKind::IdentityViolation, "jac(p∘ν) = " + id.jacobian.to_string() + " differs from (-1)^n h = " +
                                           id.signed_hessian.to_string());
  return id;
}

/// sign(jac) = (-1)^n (-1)^index, equivalently sign(h) = (-1)^index.
inline bool sign_relation_check(int hessian_sign, int morse_index, std::size_t n) {
  if (hessian_sign == 0) fail(ErrorKind::DegeneratePoint, "hessian determinant vanishes");
  const int jac_sign = (n % 2 == 0) ? hessian_sign : -hessian_sign;
  const int expected = ((n + static_cast<std::size_t>(morse_index)) % 2 == 0) ? 1 : -1;
  return jac_sign == expected;
}

inline bool sign_relation_check(const Rational& h_value, int morse_index, std::size_t n) {
  return sign_relation_check(sign(h_value), morse_index, n);
}

}  // namespace singlab
