#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "singlab/error.hpp"
#include "singlab/groebner.hpp"
#include "singlab/milnor.hpp"
#include "singlab/morselab.hpp"
#include "singlab/random.hpp"
#include "singlab/resultant.hpp"
#include "singlab/upoly.hpp"

namespace singlab {

/// Discriminant curve over the ring (lambda, t_1, ..., t_{mu-1}).
struct DiscriminantCurve {
  Polynomial poly;
};

inline RingPtr discriminant_ring(const Unfolding& u) {
  std::vector<std::string> names{"lambda"};
  for (std::size_t k = 0; k < u.num_params(); ++k) names.push_back(param_name(k));
  return make_ring(names);
}

/// Res_z(F - lambda, dF/dz), primitive, with positive leading coefficient
/// of the top lambda power.
inline DiscriminantCurve exact_discriminant_1d(const Unfolding& u, const GroebnerOptions& opts = {}) {
  (void)opts;
  if (u.n() != 1) fail(ErrorKind::UnsupportedDimension, "exact discriminant needs n = 1");
  const RingPtr dr = discriminant_ring(u);
  std::vector<std::string> names{u.ring->name(0)};
  for (const auto& nm : dr->names()) names.push_back(nm);
  const RingPtr full = make_ring(names);
  const Polynomial F = u.F.to_ring(full);
  const Polynomial lambda = Polynomial::variable(full, 1);
  Polynomial res = resultant(F - lambda, F.derivative(0), 0).to_ring(dr).primitive_part();
  const auto coeffs = res.coefficients_in(0);
  const Polynomial& top = coeffs.back();
  if (sign(top.terms().rbegin()->second) < 0) res = -res;
  return {res};
}

struct ParameterPath {
  std::vector<ParameterPoint> breakpoints;

  ParameterPoint at(const Rational& s) const {
    if (breakpoints.empty()) fail(ErrorKind::Precondition, "empty parameter path");
    const std::size_t m = breakpoints.size() - 1;
    if (m == 0) return breakpoints.front();
    const Rational x = s * Rational(static_cast<long>(m));
    std::size_t k = static_cast<std::size_t>(floor(x).get_si());
    if (k >= m) k = m - 1;
    const Rational local = x - Rational(static_cast<long>(k));
    ParameterPoint p;
    const auto& a = breakpoints[k].t;
    const auto& b = breakpoints[k + 1].t;
    for (std::size_t i = 0; i < a.size(); ++i) p.t.push_back(a[i] + local * (b[i] - a[i]));
    return p;
  }
};

struct CerfOptions {
  Rational delta{1};
  double value_tol = 1e-8;
  double hessian_tol = 1e-6;
  unsigned locate_halvings = 80;
  unsigned match_halvings = 20;
  MorseOptions morse{};
};

struct CerfStep {
  std::size_t step = 0;
  Rational s;
  ParameterPoint t;
  bool degenerate = false;
  std::string note;
  std::vector<CriticalPoint> points;
};

struct CerfEvent {
  std::size_t step = 0;  // first step after the event
  std::string kind;      // birth, death, crossing, maxwell, unresolved
  Rational s;
  ParameterPoint t;
  std::vector<double> values;
  std::vector<int> indices;
  double witness = 0;  // |h| for birth/death, |value gap| for crossings
  std::string note;
};

struct CerfTrace {
  ParameterPath path;
  std::vector<CerfStep> samples;
  std::vector<CerfEvent> events;
};

namespace detail {

inline std::optional<std::vector<CriticalPoint>> try_points(const Unfolding& u, const ParameterPoint& t,
                                                            const MorseOptions& opts, std::string* note = nullptr) {
  try {
    auto pts = critical_points(u, t, opts);
    std::sort(pts.begin(), pts.end(), [](const CriticalPoint& a, const CriticalPoint& b) { return a.approx < b.approx; });
    return pts;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateParameter && e.kind() != ErrorKind::BoxEscape) throw;
    if (note) *note = std::string(to_string(e.kind())) + ": " + e.what();
    return std::nullopt;
  }
}

inline double location_distance(const CriticalPoint& a, const CriticalPoint& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.approx.size(); ++i) d += (a.approx[i] - b.approx[i]) * (a.approx[i] - b.approx[i]);
  return std::sqrt(d);
}

/// Bijection A -> B by nearest location with matching index; absent when
/// the nearest neighbour is not clearly separated from the second one.
inline std::optional<std::vector<std::size_t>> match_points(const std::vector<CriticalPoint>& A,
                                                            const std::vector<CriticalPoint>& B, std::size_t n) {
  if (A.size() != B.size()) return std::nullopt;
  std::vector<std::size_t> map(A.size());
  if (n == 1) {
    // roots of F_t' keep their order until two of them merge
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (A[i].index != B[i].index) return std::nullopt;
      map[i] = i;
    }
    return map;
  }
  std::vector<bool> used(B.size(), false);
  for (std::size_t i = 0; i < A.size(); ++i) {
    double best = INFINITY, second = INFINITY;
    std::size_t arg = B.size();
    for (std::size_t j = 0; j < B.size(); ++j) {
      const double d = location_distance(A[i], B[j]);
      if (d < best) {
        second = best;
        best = d;
        arg = j;
      } else if (d < second) {
        second = d;
      }
    }
    if (arg == B.size() || used[arg] || B[arg].index != A[i].index) return std::nullopt;
    if (std::isfinite(second) && !(best < 0.5 * second)) return std::nullopt;
    used[arg] = true;
    map[i] = arg;
  }
  return map;
}

/// The two points with the smallest |h|; witness = the larger of the two.
inline std::pair<std::pair<std::size_t, std::size_t>, double> merging_pair(const std::vector<CriticalPoint>& pts) {
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(pts[a].hessian_det) < std::abs(pts[b].hessian_det);
  });
  if (pts.size() < 2) return {{0, 0}, INFINITY};
  return {{order[0], order[1]}, std::abs(pts[order[1]].hessian_det)};
}

class CerfTracer {
 public:
  CerfTracer(const Unfolding& u, const ParameterPath& path, const CerfOptions& opts)
      : u_(u), path_(path), opts_(opts) {}

  struct Eval {
    Rational s;
    std::vector<CriticalPoint> pts;
  };

  std::optional<Eval> eval(const Rational& s) const {
    auto pts = try_points(u_, path_.at(s), opts_.morse);
    if (!pts) return std::nullopt;
    return Eval{s, std::move(*pts)};
  }

  /// Nondegenerate evaluation strictly inside (a, b), trying a few positions.
  std::optional<Eval> eval_between(const Rational& a, const Rational& b) const {
    for (auto [p, q] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}, std::pair{1, 5}, std::pair{4, 5}}) {
      auto e = eval(a + (b - a) * ratio(p, q));
      if (e) return e;
    }
    return std::nullopt;
  }

  void compare(const Eval& A, const Eval& B, std::size_t step, unsigned depth, std::vector<CerfEvent>& out) const {
    if (A.pts.size() != B.pts.size()) {
      locate_fold(A, B, step, out);
      return;
    }
    auto map = match_points(A.pts, B.pts, u_.n());
    if (!map) {
      if (depth < opts_.match_halvings) {
        if (auto M = eval_between(A.s, B.s)) {
          compare(A, *M, step, depth + 1, out);
          compare(*M, B, step, depth + 1, out);
          return;
        }
      }
      CerfEvent e;
      e.step = step;
      e.kind = "unresolved";
      e.s = (A.s + B.s) / 2;
      e.t = path_.at(e.s);
      e.note = "critical points could not be matched between steps";
      out.push_back(std::move(e));
      return;
    }
    for (std::size_t i = 0; i < A.pts.size(); ++i)
      for (std::size_t j = i + 1; j < A.pts.size(); ++j) {
        const int sa = tol_sign(A.pts[i].value_approx - A.pts[j].value_approx);
        const int sb = tol_sign(B.pts[(*map)[i]].value_approx - B.pts[(*map)[j]].value_approx);
        // a gap that closes exactly on B is reported there; reopening is not a new event
        if (sa * sb < 0 || (sa != 0 && sb == 0)) locate_crossing(A, B, i, j, *map, step, out);
      }
  }

 private:
  int tol_sign(double g) const { return std::abs(g) < opts_.value_tol ? 0 : (g > 0 ? 1 : -1); }

  void locate_fold(Eval A, Eval B, std::size_t step, std::vector<CerfEvent>& out) const {
    const bool death = B.pts.size() < A.pts.size();
    for (unsigned it = 0;; ++it) {
      const Eval& big = death ? A : B;
      const auto [pair, witness] = merging_pair(big.pts);
      const bool pair_change = std::max(A.pts.size(), B.pts.size()) - std::min(A.pts.size(), B.pts.size()) == 2;
      if (pair_change && witness < opts_.hessian_tol) {
        CerfEvent e;
        e.step = step;
        e.kind = death ? "death" : "birth";
        e.s = big.s;
        e.t = path_.at(e.s);
        for (std::size_t k : {pair.first, pair.second}) {
          e.values.push_back(big.pts[k].value_approx);
          e.indices.push_back(big.pts[k].index);
        }
        e.witness = witness;
        out.push_back(std::move(e));
        return;
      }
      auto M = it < opts_.locate_halvings ? eval_between(A.s, B.s) : std::nullopt;
      if (!M) {
        CerfEvent e;
        e.step = step;
        e.kind = "unresolved";
        e.s = (A.s + B.s) / 2;
        e.t = path_.at(e.s);
        e.witness = witness;
        e.note = pair_change ? "hessian witness did not fall below tolerance"
                             : "critical point count changed by more than two";
        out.push_back(std::move(e));
        return;
      }
      if (M->pts.size() == A.pts.size()) A = std::move(*M);
      else B = std::move(*M);
    }
  }

  void locate_crossing(Eval A, Eval B, std::size_t i, std::size_t j, const std::vector<std::size_t>& map_ab,
                       std::size_t step, std::vector<CerfEvent>& out) const {
    std::size_t ib = map_ab[i], jb = map_ab[j];
    auto gap = [](const Eval& E, std::size_t a, std::size_t b) { return E.pts[a].value_approx - E.pts[b].value_approx; };
    const bool a_positive = gap(A, i, j) > 0;
    for (unsigned it = 0;; ++it) {
      const Eval* near = std::abs(gap(A, i, j)) <= std::abs(gap(B, ib, jb)) ? &A : &B;
      const std::size_t ni = near == &A ? i : ib, nj = near == &A ? j : jb;
      const double g = std::abs(gap(*near, ni, nj));
      if (g < opts_.value_tol) {
        CerfEvent e;
        e.step = step;
        e.s = near->s;
        e.t = path_.at(e.s);
        e.values = {near->pts[ni].value_approx, near->pts[nj].value_approx};
        e.indices = {near->pts[ni].index, near->pts[nj].index};
        e.witness = g;
        bool lowest = true;
        const double top = std::max(e.values[0], e.values[1]);
        for (std::size_t k = 0; k < near->pts.size(); ++k)
          if (k != ni && k != nj && near->pts[k].value_approx < top) lowest = false;
        e.kind = (e.indices[0] == 0 && e.indices[1] == 0 && lowest) ? "maxwell" : "crossing";
        out.push_back(std::move(e));
        return;
      }
      std::optional<Eval> M = it < opts_.locate_halvings ? eval_between(A.s, B.s) : std::nullopt;
      std::optional<std::vector<std::size_t>> mam;
      if (M) mam = match_points(A.pts, M->pts, u_.n());
      if (!M || !mam) {
        CerfEvent e;
        e.step = step;
        e.kind = "unresolved";
        e.s = near->s;
        e.t = path_.at(e.s);
        e.witness = g;
        e.note = "value crossing could not be localized";
        out.push_back(std::move(e));
        return;
      }
      const std::size_t mi = (*mam)[i], mj = (*mam)[j];
      if ((gap(*M, mi, mj) > 0) == a_positive) {
        A = std::move(*M);
        i = mi;
        j = mj;
      } else {
        B = std::move(*M);
        ib = mi;
        jb = mj;
      }
    }
  }

  const Unfolding& u_;
  const ParameterPath& path_;
  const CerfOptions& opts_;
};

}  // namespace detail

inline CerfTrace cerf_trace(const Unfolding& u, const ParameterPath& path, std::size_t steps, const CerfOptions& opts = {}) {
  if (steps < 2) fail(ErrorKind::Precondition, "cerf trace needs at least 2 steps");
  if (path.breakpoints.empty()) fail(ErrorKind::Precondition, "empty parameter path");
  for (const auto& b : path.breakpoints) {
    if (b.t.size() != u.num_params())
      fail(ErrorKind::VariableMismatch, "path breakpoint has " + std::to_string(b.t.size()) + " coordinates, expected " +
                                            std::to_string(u.num_params()));
    if (b.sup_norm() > opts.delta)
      fail(ErrorKind::PathOutsideBox, "path breakpoint outside the parameter box of radius " + to_string(opts.delta));
  }
  CerfTrace tr;
  tr.path = path;
  detail::CerfTracer tracer(u, tr.path, opts);
  std::optional<detail::CerfTracer::Eval> last;
  for (std::size_t k = 0; k <= steps; ++k) {
    CerfStep st;
    st.step = k;
    st.s = Rational(static_cast<long>(k)) / Rational(static_cast<long>(steps));
    st.t = tr.path.at(st.s);
    auto pts = detail::try_points(u, st.t, opts.morse, &st.note);
    if (!pts) {
      st.degenerate = true;
    } else {
      st.points = *pts;
      detail::CerfTracer::Eval cur{st.s, std::move(*pts)};
      if (last) tracer.compare(*last, cur, k, 0, tr.events);
      last = std::move(cur);
    }
    tr.samples.push_back(std::move(st));
  }
  return tr;
}

struct MaxwellPoint {
  ParameterPoint t;
  std::vector<CriticalPoint> minima;  // the two witnessing minima
  double gap = 0;
};

struct MaxwellOptions {
  std::size_t samples = 200;
  Rational delta{1};
  std::uint64_t seed = 0;
  double tol = 1e-8;
  unsigned max_halvings = 120;
  MorseOptions morse{};
};

namespace detail {

/// Index-0 points sorted by location.
inline std::vector<CriticalPoint> minima_of(const std::vector<CriticalPoint>& pts) {
  std::vector<CriticalPoint> m;
  for (const auto& p : pts)
    if (p.index == 0) m.push_back(p);
  return m;
}

inline ParameterPoint lerp(const ParameterPoint& a, const ParameterPoint& b, const Rational& s) {
  ParameterPoint p;
  for (std::size_t i = 0; i < a.t.size(); ++i) p.t.push_back(a.t[i] + s * (b.t[i] - a.t[i]));
  return p;
}

inline Rational sup_distance(const ParameterPoint& a, const ParameterPoint& b) {
  Rational m(0);
  for (std::size_t i = 0; i < a.t.size(); ++i) m = std::max(m, Rational(abs(a.t[i] - b.t[i])));
  return m;
}

}  // namespace detail

/// Bisection on the segment P -> Q for the sign change of the gap between the
/// minima of location ranks (ra, rb).
inline std::optional<MaxwellPoint> maxwell_on_segment(const Unfolding& u, const ParameterPoint& P,
                                                      const ParameterPoint& Q, const MaxwellOptions& opts,
                                                      std::size_t ra = 0, std::size_t rb = 1) {
  auto minima = [&](const ParameterPoint& t) -> std::optional<std::vector<CriticalPoint>> {
    auto pts = detail::try_points(u, t, opts.morse);
    if (!pts) return std::nullopt;
    auto m = detail::minima_of(*pts);
    if (m.size() <= std::max(ra, rb)) return std::nullopt;
    return m;
  };
  auto ma = minima(P), mb = minima(Q);
  if (!ma || !mb || ma->size() != mb->size()) return std::nullopt;
  auto gap = [&](const std::vector<CriticalPoint>& m) { return m[ra].value_approx - m[rb].value_approx; };
  const bool pos_a = gap(*ma) > 0;
  if (pos_a == (gap(*mb) > 0)) return std::nullopt;
  ParameterPoint a = P, b = Q;
  const Rational tol_t = from_double(opts.tol) / 10;
  for (unsigned it = 0; it < opts.max_halvings; ++it) {
    const ParameterPoint mid = detail::lerp(a, b, ratio(1, 2));
    auto mm = minima(mid);
    if (!mm || mm->size() != ma->size()) return std::nullopt;
    const double g = gap(*mm);
    if (std::abs(g) < opts.tol && detail::sup_distance(a, b) < tol_t) {
      auto all = detail::try_points(u, mid, opts.morse);
      const double top = std::max((*mm)[ra].value_approx, (*mm)[rb].value_approx);
      for (const auto& p : *all)
        if (p.value_approx < top - opts.tol) return std::nullopt;  // not the absolute minimum
      return MaxwellPoint{mid, {(*mm)[ra], (*mm)[rb]}, std::abs(g)};
    }
    if ((g > 0) == pos_a) a = mid;
    else b = mid;
  }
  return std::nullopt;
}

/// Random segments between parameters with at least two minima.
inline std::vector<MaxwellPoint> maxwell_scan(const Unfolding& u, const MaxwellOptions& opts) {
  SampleStream rng(opts.seed);
  std::vector<ParameterPoint> pool;
  for (std::size_t k = 0; k < opts.samples; ++k) {
    ParameterPoint t{rng.point_in_box(u.num_params(), opts.delta)};
    auto pts = detail::try_points(u, t, opts.morse);
    if (pts && detail::minima_of(*pts).size() >= 2) pool.push_back(std::move(t));
  }
  std::vector<MaxwellPoint> out;
  for (std::size_t k = 0; k + 1 < pool.size(); k += 2)
    if (auto m = maxwell_on_segment(u, pool[k], pool[k + 1], opts)) out.push_back(std::move(*m));
  return out;
}

struct EqualLevelOptions {
  int index = 0;
  std::size_t budget = 2000;  // random starts
  std::size_t starts = 8;     // Gauss-Newton runs from the best starts
  unsigned iterations = 60;
  double tol = 1e-8;
  Rational delta{1};
  std::uint64_t seed = 0;
  MorseOptions morse{};
};

struct EqualLevelResult {
  ParameterPoint t;
  std::vector<CriticalPoint> points;  // the index-i points at t
  double spread = 0;                  // max - min of their values
  bool singleton = false;
  std::size_t draws = 0;
};

namespace detail {

inline std::vector<CriticalPoint> index_points(const std::vector<CriticalPoint>& pts, int index) {
  std::vector<CriticalPoint> out;
  for (const auto& p : pts)
    if (p.index == index) out.push_back(p);
  return out;
}

inline double spread(const std::vector<CriticalPoint>& pts) {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& p : pts) {
    lo = std::min(lo, p.value_approx);
    hi = std::max(hi, p.value_approx);
  }
  return pts.empty() ? 0.0 : hi - lo;
}

inline ParameterPoint to_dyadic(const Eigen::VectorXd& x) {
  ParameterPoint p;
  for (Eigen::Index i = 0; i < x.size(); ++i) p.t.push_back(dyadic(x[i], 52));
  return p;
}

/// n = 1: parameters whose F_t' has mu prescribed real roots (centred so the
/// z^(mu-1) coefficient vanishes), scaled into the parameter box.
inline ParameterPoint configuration_draw(const Unfolding& u, SampleStream& rng, const Rational& delta) {
  const std::size_t mu = u.num_params() + 1;
  std::vector<Rational> roots;
  Rational mean(0);
  for (std::size_t k = 0; k < mu; ++k) {
    roots.push_back(rng.dyadic_in(Rational(1)));
    mean += roots.back();
  }
  mean /= Rational(static_cast<long>(mu));
  for (auto& r : roots) r -= mean;
  for (;;) {
    UPoly d = UPoly::constant(Rational(static_cast<long>(mu + 1)));
    for (const auto& r : roots) d = d * UPoly({-r, Rational(1)});
    ParameterPoint t;
    for (std::size_t k = 0; k + 1 < mu; ++k) {
      const std::uint32_t e = u.deformation_monomials[k][0];  // t_{k+1} multiplies z^e
      t.t.push_back(d.coeff(e - 1) / Rational(static_cast<long>(e)));
    }
    if (t.sup_norm() <= delta) return t;
    for (auto& r : roots) r /= 2;
  }
}

}  // namespace detail

/// Heuristic: damped minimum-norm Gauss-Newton on the gaps between the
/// values of the index-i critical points.  The derivative of a critical
/// value in t_k is g_k at the critical point.
inline std::optional<EqualLevelResult> equal_level_search(const Unfolding& u, const EqualLevelOptions& opts) {
  SampleStream rng(opts.seed);
  const std::size_t m = u.num_params();
  struct Start {
    ParameterPoint t;
    std::size_t count;
  };
  std::vector<Start> starts;
  std::size_t best = 0;
  for (std::size_t k = 0; k < opts.budget; ++k) {
    ParameterPoint t = (u.n() == 1 && k % 2 == 1) ? detail::configuration_draw(u, rng, opts.delta)
                                                  : ParameterPoint{rng.point_in_box(m, opts.delta)};
    auto pts = detail::try_points(u, t, opts.morse);
    if (!pts) continue;
    const std::size_t c = detail::index_points(*pts, opts.index).size();
    if (c == 0) continue;
    if (c > best) {
      best = c;
      starts.clear();
    }
    if (c == best && starts.size() < opts.starts) starts.push_back({t, c});
  }
  if (starts.empty()) return std::nullopt;
  if (best == 1) {
    auto pts = detail::index_points(*detail::try_points(u, starts.front().t, opts.morse), opts.index);
    return EqualLevelResult{starts.front().t, pts, 0.0, true, opts.budget};
  }

  std::vector<Polynomial> gk;
  for (std::size_t k = 0; k < m; ++k) gk.push_back(u.g(k).to_ring(u.analysis.f.ring_ptr()));

  for (const auto& st : starts) {
    ParameterPoint t = st.t;
    auto pts = detail::index_points(*detail::try_points(u, t, opts.morse), opts.index);
    for (unsigned it = 0; it < opts.iterations; ++it) {
      const double sp = detail::spread(pts);
      if (sp < opts.tol) return EqualLevelResult{t, pts, sp, false, opts.budget};
      const std::size_t c = pts.size();
      Eigen::VectorXd r(static_cast<Eigen::Index>(c - 1));
      Eigen::MatrixXd J(static_cast<Eigen::Index>(c - 1), static_cast<Eigen::Index>(m));
      for (std::size_t a = 0; a + 1 < c; ++a) {
        r[static_cast<Eigen::Index>(a)] = pts[a].value_approx - pts[a + 1].value_approx;
        for (std::size_t k = 0; k < m; ++k)
          J(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) =
              gk[k].evaluate_double(pts[a].approx) - gk[k].evaluate_double(pts[a + 1].approx);
      }
      Eigen::VectorXd x(static_cast<Eigen::Index>(m));
      for (std::size_t k = 0; k < m; ++k) x[static_cast<Eigen::Index>(k)] = to_double(t.t[k]);
      const Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(r);
      bool moved = false;
      for (double damp = 1.0; damp > 1e-6; damp /= 2) {
        const Eigen::VectorXd y = x - damp * step;
        if (y.cwiseAbs().maxCoeff() > to_double(opts.delta)) continue;
        ParameterPoint cand = detail::to_dyadic(y);
        auto all = detail::try_points(u, cand, opts.morse);
        if (!all) continue;
        auto ip = detail::index_points(*all, opts.index);
        if (ip.size() != c) continue;
        if (detail::spread(ip) < sp) {
          t = std::move(cand);
          pts = std::move(ip);
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    const double sp = detail::spread(pts);
    if (sp < opts.tol) return EqualLevelResult{t, pts, sp, false, opts.budget};
  }
  return std::nullopt;
}

struct SlicePlane {
  Rational lambda_lo{-2}, lambda_hi{2};
  std::size_t axis = 0;  // parameter t_{axis+1} varies
  Rational t_lo{-2}, t_hi{2};
  ParameterPoint fixed;  // values of the other parameters (axis entry ignored)
};

struct SliceCell {
  std::size_t i = 0, j = 0;  // lambda column, t row
  Rational lambda, t;        // cell centre
  int count = 0;             // real fiber points (n = 1) or critical values below lambda (numeric mode)
  int side = 0;              // sign of the discriminant, 0 when the cell meets it
};

struct SliceGrid {
  SlicePlane plane;
  std::size_t grid = 1;
  bool exact = true;
  std::vector<SliceCell> cells;
};

inline SliceGrid slice_sample(const Unfolding& u, const SlicePlane& plane, std::size_t grid,
                              const MorseOptions& morse = {}) {
  if (grid == 0) fail(ErrorKind::Precondition, "grid must be positive");
  if (plane.axis >= u.num_params()) fail(ErrorKind::Precondition, "slice axis out of range");
  if (plane.fixed.t.size() != u.num_params())
    fail(ErrorKind::VariableMismatch, "fixed parameter point has the wrong dimension");
  SliceGrid out{plane, grid, u.n() == 1, {}};
  const Rational g(static_cast<long>(grid));
  const Rational dl = (plane.lambda_hi - plane.lambda_lo) / g;
  const Rational dt = (plane.t_hi - plane.t_lo) / g;
  std::optional<DiscriminantCurve> D;
  if (out.exact) D = exact_discriminant_1d(u);
  for (std::size_t j = 0; j < grid; ++j) {
    for (std::size_t i = 0; i < grid; ++i) {
      SliceCell c;
      c.i = i;
      c.j = j;
      const Rational l0 = plane.lambda_lo + dl * Rational(static_cast<long>(i));
      const Rational t0 = plane.t_lo + dt * Rational(static_cast<long>(j));
      c.lambda = l0 + dl / 2;
      c.t = t0 + dt / 2;
      ParameterPoint p = plane.fixed;
      p.t[plane.axis] = c.t;
      if (out.exact) {
        const UPoly f = UPoly::from_polynomial(specialize(u, p), 0);
        c.count = count_real_roots(f - UPoly::constant(c.lambda), -morse.box_radius, morse.box_radius);
        std::vector<RInterval> box(1 + u.num_params());
        box[0] = RInterval(l0, l0 + dl);
        for (std::size_t k = 0; k < u.num_params(); ++k) box[k + 1] = RInterval(p.t[k]);
        box[plane.axis + 1] = RInterval(t0, t0 + dt);
        c.side = evaluate(D->poly, box).sign();
        if (c.side == 0) {
          // interval extension inconclusive: sample a 3x3 lattice in the cell
          std::vector<Rational> pt(1 + u.num_params());
          for (std::size_t k = 0; k < u.num_params(); ++k) pt[k + 1] = p.t[k];
          int seen = 2;
          for (int a = 0; a <= 2 && seen != 0; ++a)
            for (int b = 0; b <= 2 && seen != 0; ++b) {
              pt[0] = l0 + dl * ratio(a, 2);
              pt[plane.axis + 1] = t0 + dt * ratio(b, 2);
              const int sg = sign(D->poly.evaluate(pt));
              if (seen == 2) seen = sg;
              else if (sg != seen) seen = 0;
            }
          c.side = seen;
        }
      } else {
        std::vector<CriticalPoint> pts;
        try {
          pts = critical_points(u, p, morse);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::DegenerateParameter && e.kind() != ErrorKind::BoxEscape) throw;
          c.side = 0;
          out.cells.push_back(c);
          continue;
        }
        c.side = 1;
        for (const auto& cp : pts) {
          if (cp.value.hi < c.lambda) ++c.count;
          if (!(cp.value.hi < l0 || cp.value.lo > l0 + dl)) c.side = 0;
        }
      }
      out.cells.push_back(c);
    }
  }
  return out;
}

}  // namespace singlab
