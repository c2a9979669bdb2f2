#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "singlab/error.hpp"
#include "singlab/groebner.hpp"
#include "singlab/polynomial.hpp"
#include "singlab/rational.hpp"
#include "singlab/semitoric/semigroup.hpp"
#include "singlab/semitoric/series.hpp"

namespace singlab {

// ---------------------------------------------------------------- toric ideal

/// U^lhs - lambda * U^rhs.
struct Binomial {
  Exponents lhs;
  Exponents rhs;
  Rational lambda{1};
};

struct ToricIdeal {
  std::vector<long> weights;
  RingPtr ring;  // U0..Ug
  std::vector<Binomial> binomials;
  std::vector<Polynomial> basis;
};

inline RingPtr toric_ring(std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) names.push_back("U" + std::to_string(i));
  return make_ring(std::move(names));
}

inline long weighted_degree(const Exponents& e, const std::vector<long>& w) {
  long d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<long>(e[i]) * w.at(i);
  return d;
}

/// Reduced basis of ker(U_i -> T^gamma_i) by eliminating T.
inline ToricIdeal toric_ideal(const NumericalSemigroup& s, const GroebnerOptions& opts = {}) {
  const std::size_t n = s.generators.size();
  if (n < 2) fail(ErrorKind::Precondition, "toric ideal needs at least two generators");

  // T first, then U_g..U_0 so ties favour the higher generators.
  std::vector<std::string> names{"T"};
  for (std::size_t i = n; i-- > 0;) names.push_back("U" + std::to_string(i));
  const RingPtr big = make_ring(names);
  std::vector<std::int64_t> w;
  for (std::size_t i = n; i-- > 0;) w.push_back(s.generators[i]);
  const auto order = MonomialOrder::weighted(w, MonomialOrder::Kind::Lex, 1);

  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < n; ++i) {
    Exponents eu(n + 1, 0), et(n + 1, 0);
    eu[n - i] = 1;
    et[0] = static_cast<std::uint32_t>(s.generators[i]);
    Polynomial g = Polynomial::monomial(big, eu, Rational(1));
    g -= Polynomial::monomial(big, et, Rational(1));
    gens.push_back(std::move(g));
  }
  const auto gb = groebner_basis(gens, order, opts);

  ToricIdeal out;
  out.weights = s.generators;
  out.ring = toric_ring(n);
  auto to_small = [&](const Exponents& e) {
    Exponents r(n, 0);
    for (std::size_t i = 0; i < n; ++i) r[i] = e[n - i];
    return r;
  };
  for (const auto& g : gb) {
    if (g.degree_in(0) > 0) continue;
    if (g.size() != 2) fail(ErrorKind::NonBinomialElement, "basis element " + g.to_string() + " is not a binomial");
    const Exponents lead = leading_monomial(g, order);
    Binomial b;
    b.lhs = to_small(lead);
    for (const auto& [e, c] : g.terms()) {
      if (e == lead) {
        if (c != 1) fail(ErrorKind::NonBinomialElement, "non-monic element " + g.to_string());
        continue;
      }
      b.rhs = to_small(e);
      b.lambda = -c;
    }
    if (b.lambda != 1) fail(ErrorKind::NonBinomialElement, "coefficient " + to_string(b.lambda) + " in " + g.to_string());
    if (weighted_degree(b.lhs, out.weights) != weighted_degree(b.rhs, out.weights))
      fail(ErrorKind::NonBinomialElement, "element " + g.to_string() + " is not homogeneous");
    Polynomial p = Polynomial::monomial(out.ring, b.lhs, Rational(1));
    p -= Polynomial::monomial(out.ring, b.rhs, b.lambda);
    out.binomials.push_back(std::move(b));
    out.basis.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------- fans

using Ray = std::vector<long>;

/// Simplicial cone; generators kept sorted.
struct Cone {
  std::vector<Ray> rays;
};

struct ResolutionCertificate {
  std::vector<long> gamma;
  long conductor = 0;
  std::vector<Cone> fan;
  std::size_t chart = 0;
  std::vector<long> a;
  std::size_t steps = 0;
};

namespace detail {

using RMatrix = std::vector<std::vector<Rational>>;

/// Columns are the cone rays.
inline RMatrix ray_matrix(const Cone& c) {
  const std::size_t d = c.rays.size();
  RMatrix m(d, std::vector<Rational>(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) m[i][j] = Rational(c.rays[j][i]);
  return m;
}

inline Rational det(RMatrix m) {
  const std::size_t d = m.size();
  Rational out(1);
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && m[piv][col] == 0) ++piv;
    if (piv == d) return Rational(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      out = -out;
    }
    out *= m[col][col];
    for (std::size_t r = col + 1; r < d; ++r) {
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < d; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return out;
}

inline RMatrix inverse(RMatrix m) {
  const std::size_t d = m.size();
  RMatrix inv(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && m[piv][col] == 0) ++piv;
    if (piv == d) fail(ErrorKind::Precondition, "singular cone");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = m[col][col];
    for (std::size_t k = 0; k < d; ++k) {
      m[col][k] /= p;
      inv[col][k] /= p;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t k = 0; k < d; ++k) {
        m[r][k] -= f * m[col][k];
        inv[r][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

inline std::vector<Rational> mat_vec(const RMatrix& m, const std::vector<long>& v) {
  std::vector<Rational> out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline long cone_det(const Cone& c) {
  const Rational d = det(ray_matrix(c));
  return d.get_num().get_si();
}

inline void normalize(Cone& c) { std::sort(c.rays.begin(), c.rays.end()); }

inline void normalize(std::vector<Cone>& fan) {
  for (auto& c : fan) normalize(c);
  std::sort(fan.begin(), fan.end(), [](const Cone& x, const Cone& y) { return x.rays < y.rays; });
}

/// Stellar subdivision of every cone containing p.
inline std::vector<Cone> star_subdivide(const std::vector<Cone>& fan, const Ray& p) {
  std::vector<Cone> out;
  for (const auto& c : fan) {
    const auto lambda = mat_vec(inverse(ray_matrix(c)), p);
    bool inside = std::all_of(lambda.begin(), lambda.end(), [](const Rational& l) { return l >= 0; });
    bool is_ray = std::find(c.rays.begin(), c.rays.end(), p) != c.rays.end();
    if (!inside || is_ray) {
      out.push_back(c);
      continue;
    }
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      if (lambda[i] == 0) continue;
      Cone sub = c;
      sub.rays[i] = p;
      out.push_back(std::move(sub));
    }
  }
  normalize(out);
  return out;
}

/// Nonzero lattice point of the half-open fundamental parallelepiped with the
/// smallest (sum of cone coordinates, lexicographic) key.
inline Ray parallelepiped_pivot(const Cone& c) {
  const std::size_t d = c.rays.size();
  const auto inv = inverse(ray_matrix(c));
  Ray hi(d, 0);
  for (const auto& r : c.rays)
    for (std::size_t i = 0; i < d; ++i) hi[i] += r[i];
  std::optional<std::pair<Rational, Ray>> best;
  Ray p(d, 0);
  while (true) {
    if (std::any_of(p.begin(), p.end(), [](long x) { return x != 0; })) {
      const auto lambda = mat_vec(inv, p);
      bool ok = std::all_of(lambda.begin(), lambda.end(), [](const Rational& l) { return l >= 0 && l < 1; });
      if (ok) {
        Rational h(0);
        for (const auto& l : lambda) h += l;
        if (!best || h < best->first || (h == best->first && p < best->second)) best = {h, p};
      }
    }
    std::size_t k = 0;
    while (k < d && p[k] == hi[k]) p[k++] = 0;
    if (k == d) break;
    ++p[k];
  }
  if (!best) fail(ErrorKind::Precondition, "cone is already unimodular");
  return best->second;
}

}  // namespace detail

struct ResolveOptions {
  std::size_t max_steps = 10000;
};

/// Unimodular fan of the orthant having gamma as a ray.
inline ResolutionCertificate resolve_monomial_curve(const NumericalSemigroup& s, const ResolveOptions& opts = {}) {
  const std::size_t d = s.generators.size();
  if (d > 3) fail(ErrorKind::DimensionTooLarge, "ambient dimension " + std::to_string(d) + " exceeds 3");
  ResolutionCertificate cert;
  cert.gamma = s.generators;
  cert.conductor = s.conductor;

  Cone orthant;
  for (std::size_t i = 0; i < d; ++i) {
    Ray e(d, 0);
    e[i] = 1;
    orthant.rays.push_back(e);
  }
  std::vector<Cone> fan{orthant};
  detail::normalize(fan);
  if (d > 1) fan = detail::star_subdivide(fan, cert.gamma);

  while (true) {
    auto bad = std::find_if(fan.begin(), fan.end(), [](const Cone& c) { return std::abs(detail::cone_det(c)) != 1; });
    if (bad == fan.end()) break;
    if (++cert.steps > opts.max_steps)
      fail(ErrorKind::RegularizationBudget, "regularization exceeded " + std::to_string(opts.max_steps) + " subdivisions");
    fan = detail::star_subdivide(fan, detail::parallelepiped_pivot(*bad));
  }
  cert.fan = std::move(fan);

  for (std::size_t k = 0; k < cert.fan.size(); ++k) {
    const auto& rays = cert.fan[k].rays;
    if (std::find(rays.begin(), rays.end(), cert.gamma) == rays.end()) continue;
    cert.chart = k;
    const auto a = detail::mat_vec(detail::inverse(detail::ray_matrix(cert.fan[k])), cert.gamma);
    for (const auto& v : a) cert.a.push_back(v.get_num().get_si());
    return cert;
  }
  fail(ErrorKind::Precondition, "gamma is not a ray of the regularized fan");
}

// ---------------------------------------------------------------- embedding series

namespace detail {

/// Exponents (a_0..a_i) with a_k < n_k for k >= 1 and sum a_k bbar_k = v.
inline std::optional<std::vector<long>> standard_representation(long v, const std::vector<long>& bbar,
                                                                 const std::vector<long>& n, std::size_t upto) {
  std::vector<long> a(upto + 1, 0);
  std::optional<std::vector<long>> found;
  auto rec = [&](auto&& self, std::size_t k, long rest) -> void {
    if (found) return;
    if (k == 0) {
      if (rest >= 0 && rest % bbar[0] == 0) {
        a[0] = rest / bbar[0];
        found = a;
      }
      return;
    }
    for (long ak = 0; ak < n[k] && ak * bbar[k] <= rest; ++ak) {
      a[k] = ak;
      self(self, k - 1, rest - ak * bbar[k]);
    }
    a[k] = 0;
  };
  rec(rec, upto, v);
  return found;
}

}  // namespace detail

/// Series x(t), y(t) of a branch truncated at precision.
inline std::pair<Series, Series> branch_series(const PlaneBranch& b, std::size_t precision) {
  Series x = Series::monomial(precision, b.beta0, b.x_coefficient);
  Series y(precision);
  for (const auto& [j, c] : b.y)
    if (j >= 0 && static_cast<std::size_t>(j) < precision) y[static_cast<std::size_t>(j)] = c;
  return {x, y};
}

/// Embedding series xi_0..xi_g with ord xi_i = bbar_i, built from x, y by
/// the approximate-root recursion xi_{i+1} = xi_i^{n_i} - (monomials in xi_0..xi_i).
inline std::vector<Series> embedding_series(const PlaneBranch& b, std::size_t precision) {
  const auto data = characteristic_data(b);
  const auto& bbar = data.semigroup;
  const std::size_t g = bbar.size() - 1;
  if (precision <= static_cast<std::size_t>(*std::max_element(bbar.begin(), bbar.end())))
    fail(ErrorKind::TruncationInsufficient, "precision " + std::to_string(precision) + " does not reach the generators");
  std::vector<long> n(g + 1, 1);
  for (std::size_t i = 1; i <= g; ++i) n[i] = data.e[i - 1] / data.e[i];

  auto [x, y] = branch_series(b, precision);
  std::vector<Series> xi{x};
  auto reduce = [&](Series cur, std::size_t upto, long target) {
    for (std::size_t guard = 0; guard < precision; ++guard) {
      const long o = cur.order();
      if (o < 0) fail(ErrorKind::TruncationInsufficient, "embedding series vanished to precision " + std::to_string(precision));
      if (o == target) return cur;
      const auto rep = detail::standard_representation(o, bbar, n, upto);
      if (!rep) fail(ErrorKind::OrderMismatch, "order " + std::to_string(o) + " is not a semigroup value");
      Series m = Series::monomial(precision, 0, Rational(1));
      for (std::size_t k = 0; k <= upto; ++k) m = m * xi[k].pow((*rep)[k]);
      cur = cur - (cur.lead() / m.lead()) * m;
    }
    fail(ErrorKind::TruncationInsufficient, "embedding recursion did not reach order " + std::to_string(target));
  };
  if (g == 0) return xi;
  xi.push_back(reduce(y, 0, bbar[1]));
  for (std::size_t i = 1; i < g; ++i) xi.push_back(reduce(xi[i].pow(n[i]), i, bbar[i + 1]));
  return xi;
}

// ---------------------------------------------------------------- strict transform

struct StrictTransformReport {
  std::vector<long> orders;
  std::vector<Rational> leading_units;
  std::vector<Series> coordinates;
  std::size_t precision = 0;
  bool pass = false;
  std::string note;
};

/// Coordinates y_j = prod_i xi_i^{(V^-1)_{j,i}} in the certificate chart.
inline StrictTransformReport verify_strict_transform(const std::vector<Series>& xi, const ResolutionCertificate& cert) {
  const std::size_t d = cert.gamma.size();
  if (xi.size() != d) fail(ErrorKind::OrderMismatch, "expected " + std::to_string(d) + " embedding series");
  const std::size_t precision = xi.front().precision();
  const long gmax = *std::max_element(cert.gamma.begin(), cert.gamma.end());
  const long need = std::max(cert.conductor, gmax) + 2;
  if (static_cast<long>(precision) < need)
    fail(ErrorKind::TruncationInsufficient,
         "precision " + std::to_string(precision) + " is below " + std::to_string(need));
  std::vector<Series> units;
  for (std::size_t i = 0; i < d; ++i) {
    if (xi[i].precision() != precision) fail(ErrorKind::Precondition, "embedding series precisions differ");
    if (xi[i].order() != cert.gamma[i])
      fail(ErrorKind::OrderMismatch, "ord xi_" + std::to_string(i) + " = " + std::to_string(xi[i].order()) +
                                         ", expected " + std::to_string(cert.gamma[i]));
    units.push_back(xi[i].shift_down(static_cast<std::size_t>(cert.gamma[i])));
  }
  const std::size_t unit_precision = precision - static_cast<std::size_t>(gmax);
  for (auto& u : units) u = u.truncate(unit_precision);

  const auto winv = detail::inverse(detail::ray_matrix(cert.fan.at(cert.chart)));
  StrictTransformReport rep;
  rep.precision = unit_precision;
  rep.pass = true;
  std::size_t ones = 0;
  for (std::size_t j = 0; j < d; ++j) {
    Rational ajq(0);
    Series u = Series::monomial(unit_precision, 0, Rational(1));
    for (std::size_t i = 0; i < d; ++i) {
      const Rational& wji = winv[j][i];
      if (wji.get_den() != 1) fail(ErrorKind::Precondition, "chart cone is not unimodular");
      ajq += wji * cert.gamma[i];
      u = u * units[i].pow(wji.get_num().get_si());
    }
    const long aj = ajq.get_num().get_si();
    Series yj(unit_precision);
    for (std::size_t k = 0; k + static_cast<std::size_t>(std::max(aj, 0L)) < unit_precision; ++k)
      yj[k + static_cast<std::size_t>(std::max(aj, 0L))] = u[k];
    rep.orders.push_back(yj.order());
    rep.leading_units.push_back(u[0]);
    rep.coordinates.push_back(yj);
    if (aj < 0 || yj.order() != cert.a.at(j)) {
      rep.pass = false;
      rep.note = "order of y_" + std::to_string(j + 1) + " differs from the certificate";
    }
    if (aj == 1) {
      ++ones;
      if (yj.precision() < 2 || yj[1] == 0) {
        rep.pass = false;
        rep.note = "coordinate y_" + std::to_string(j + 1) + " has no linear term";
      }
    } else if (aj != 0) {
      rep.pass = false;
      rep.note = "exponent a_" + std::to_string(j + 1) + " = " + std::to_string(aj) + " is neither 0 nor 1";
    }
  }
  if (ones != 1) {
    rep.pass = false;
    if (rep.note.empty()) rep.note = "exponent vector must contain exactly one 1";
  }
  return rep;
}

// ---------------------------------------------------------------- overweight

/// Minimum weight over the support; nullopt stands for infinity.
inline std::optional<long> weight(const Polynomial& p, const std::vector<long>& w) {
  if (w.size() != p.ring().size()) fail(ErrorKind::VariableMismatch, "one weight per variable is required");
  for (long x : w)
    if (x <= 0) fail(ErrorKind::Precondition, "weights must be positive");
  std::optional<long> best;
  for (const auto& [e, c] : p.terms()) {
    const long v = weighted_degree(e, w);
    if (!best || v < *best) best = v;
  }
  return best;
}

inline Polynomial initial_form(const Polynomial& p, const std::vector<long>& w) {
  const auto m = weight(p, w);
  Polynomial out(p.ring_ptr());
  if (!m) return out;
  for (const auto& [e, c] : p.terms())
    if (weighted_degree(e, w) == *m) out += Polynomial::monomial(p.ring_ptr(), e, c);
  return out;
}

struct OverweightVerdict {
  bool pass = false;
  std::optional<long> weight;
  std::optional<long> expected_weight;
  Polynomial initial;
  std::string note;
};

inline std::vector<OverweightVerdict> overweight_check(const std::vector<long>& weights,
                                                       const std::vector<Polynomial>& series,
                                                       const std::vector<Polynomial>& expected) {
  if (series.size() != expected.size()) fail(ErrorKind::Precondition, "one expected binomial per series is required");
  std::vector<OverweightVerdict> out;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& e = expected[k];
    if (e.size() != 2 || initial_form(e, weights).size() != 2)
      fail(ErrorKind::Precondition, "expected initial form " + e.to_string() + " is not a homogeneous binomial");
    OverweightVerdict v{false, weight(series[k], weights), weight(e, weights), initial_form(series[k], weights), ""};
    v.pass = v.initial == e;
    if (!v.pass) {
      if (v.weight && *v.weight < *v.expected_weight)
        v.note = "term of weight " + std::to_string(*v.weight) + " below " + std::to_string(*v.expected_weight);
      else
        v.note = "initial form is " + v.initial.to_string();
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// Verdicts against the generators of a toric ideal: a series passes when its
/// initial form is one of the basis binomials up to sign.
inline std::vector<OverweightVerdict> overweight_against_ideal(const ToricIdeal& ideal,
                                                               const std::vector<Polynomial>& series) {
  std::vector<OverweightVerdict> out;
  for (const auto& p : series) {
    OverweightVerdict v{false, weight(p, ideal.weights), std::nullopt, initial_form(p, ideal.weights), ""};
    for (const auto& b : ideal.basis)
      if (v.initial == b || v.initial == -b) {
        v.pass = true;
        v.expected_weight = weight(b, ideal.weights);
      }
    if (!v.pass) v.note = "initial form " + v.initial.to_string() + " is not a generator of the toric ideal";
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace singlab
