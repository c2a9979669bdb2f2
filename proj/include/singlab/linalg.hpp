#pragma once

#include <utility>
#include <vector>

#include "singlab/error.hpp"
#include "singlab/polynomial.hpp"
#include "singlab/rational.hpp"
#include "singlab/resultant.hpp"

namespace singlab {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Determinant by fraction-free Bareiss elimination; every division is exact
/// in the polynomial ring.  The empty matrix has determinant 1.
inline Polynomial determinant(PolyMatrix m, const RingPtr& ring) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) fail(ErrorKind::Precondition, "determinant of a non-square matrix");
  if (n == 0) return Polynomial::constant(ring, 1);
  Rational sgn(1);
  Polynomial prev = Polynomial::constant(ring, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return Polynomial(ring);
      std::swap(m[k], m[swap_row]);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_divide(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
      m[i][k] = Polynomial(ring);
    }
    prev = m[k][k];
  }
  return m[n - 1][n - 1] * sgn;
}

/// Inertia (positive count, negative count) of a symmetric rational matrix,
/// by congruence diagonalization.
inline std::pair<int, int> inertia(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  int pos = 0, neg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (a[i][i] != 0) {
          p = i;
          break;
        }
      if (p != n) {
        std::swap(a[k], a[p]);
        for (auto& row : a) std::swap(row[k], row[p]);
      } else {
        std::size_t q = n;
        for (std::size_t i = k + 1; i < n; ++i)
          if (a[k][i] != 0) {
            q = i;
            break;
          }
        if (q == n) continue;  // row k is zero
        // e_k <- e_k + e_q makes the pivot 2 a[k][q] != 0
        for (std::size_t j = 0; j < n; ++j) a[k][j] += a[q][j];
        for (std::size_t i = 0; i < n; ++i) a[i][k] += a[i][q];
      }
    }
    const Rational piv = a[k][k];
    if (piv > 0) ++pos;
    else ++neg;
    // Schur complement on the trailing block
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= a[i][k] * a[k][j] / piv;
    for (std::size_t i = k + 1; i < n; ++i) a[i][k] = a[k][i] = 0;
  }
  return {pos, neg};
}

}  // namespace singlab
