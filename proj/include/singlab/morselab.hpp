#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "singlab/critmap.hpp"
#include "singlab/error.hpp"
#include "singlab/groebner.hpp"
#include "singlab/interval.hpp"
#include "singlab/milnor.hpp"
#include "singlab/random.hpp"
#include "singlab/upoly.hpp"

namespace singlab {

struct ParameterPoint {
  std::vector<Rational> t;

  Rational sup_norm() const {
    Rational m(0);
    for (const auto& v : t) m = std::max(m, Rational(abs(v)));
    return m;
  }
};

struct MorseOptions {
  Rational box_radius{4};
  GroebnerOptions groebner{};
  /// Value intervals are refined down to width 2^-separation_bits before two
  /// critical values are declared equal.
  unsigned separation_bits = 80;
  /// Final width 2^-location_bits of location intervals.
  unsigned location_bits = 50;
  /// Halvings allowed while deciding a hessian sign or box membership.
  unsigned max_halvings = 200;
};

struct CriticalPoint {
  std::vector<RInterval> location;
  std::vector<double> approx;
  RInterval value;
  double value_approx = 0;
  int index = 0;
  int hessian_det_sign = 0;
  double hessian_det = 0;
};

struct CriticalSet {
  std::vector<CriticalPoint> points;
  /// F_t' for n = 1; for n = 2 the eliminant q(s) of the sheared system.
  UPoly elimination;
  std::size_t complex_count = 0;
  int shear = 0;  // n = 2: w = s - shear*z
};

struct MorseReport {
  ParameterPoint t;
  std::vector<CriticalPoint> points;
  std::vector<int> counts;  // N_0..N_n
  int alt_sum = 0;
  int degree = 0;
  bool excellent = false;
};

/// F_t as a polynomial in the germ variables only.
inline Polynomial specialize(const Unfolding& u, const ParameterPoint& t) {
  if (t.t.size() != u.num_params())
    fail(ErrorKind::VariableMismatch, "parameter point has " + std::to_string(t.t.size()) + " coordinates, unfolding has " +
                                          std::to_string(u.num_params()));
  Polynomial F = u.F;
  for (std::size_t k = 0; k < t.t.size(); ++k) F = F.substitute(u.param_index(k), t.t[k]);
  return F.to_ring(u.analysis.f.ring_ptr());
}

namespace detail {

/// A critical point parametrized by a simple root of the square-free `s`.
struct RootChart {
  UPoly s;
  UPoly h;  // n = 2: z = h(s)
  int shear = 0;
  std::size_t n = 1;

  std::vector<RInterval> box(const IsolatingInterval& iv) const {
    const RInterval S = iv.as_interval();
    if (n == 1) return {S};
    const RInterval Z = h(S);
    return {Z, S - Rational(shear) * Z};
  }

  void halve(IsolatingInterval& iv) const { refine(s, iv, (iv.hi - iv.lo) / 2); }
};

inline RInterval hessian_det(const std::vector<std::vector<Polynomial>>& H, const std::vector<RInterval>& box) {
  if (H.size() == 1) return evaluate(H[0][0], box);
  return evaluate(H[0][0], box) * evaluate(H[1][1], box) - pow(evaluate(H[0][1], box), 2);
}

inline CriticalPoint classify(const RootChart& chart, IsolatingInterval& iv, const Polynomial& Ft,
                              const std::vector<std::vector<Polynomial>>& H, const MorseOptions& opts) {
  CriticalPoint cp;
  const std::size_t n = chart.n;
  unsigned tries = 0;
  for (;;) {
    const auto box = chart.box(iv);
    const RInterval det = hessian_det(H, box);
    if (det.sign() != 0) {
      cp.hessian_det_sign = det.sign();
      if (n == 1) {
        cp.index = det.sign() > 0 ? 0 : 1;
        break;
      }
      if (det.sign() < 0) {
        cp.index = 1;
        break;
      }
      const int fzz = evaluate(H[0][0], box).sign();
      if (fzz != 0) {
        cp.index = fzz > 0 ? 0 : 2;
        break;
      }
    }
    if (++tries > opts.max_halvings)
      fail(ErrorKind::DegenerateParameter, "hessian determinant not separated from 0 at a critical point");
    chart.halve(iv);
  }
  return cp;
}

/// Refines until the critical value intervals are pairwise disjoint or the
/// location width falls below 2^-bits.
inline void separate_values(const RootChart& chart, std::vector<IsolatingInterval>& ivs, const Polynomial& Ft,
                            unsigned bits) {
  const Rational floor_width = Rational(1) / pow(Rational(2), bits);
  for (;;) {
    std::vector<RInterval> vals;
    for (const auto& iv : ivs) vals.push_back(evaluate(Ft, chart.box(iv)));
    std::vector<bool> overlap(ivs.size(), false);
    for (std::size_t i = 0; i < ivs.size(); ++i)
      for (std::size_t j = i + 1; j < ivs.size(); ++j)
        if (!vals[i].disjoint(vals[j])) overlap[i] = overlap[j] = true;
    bool progressed = false;
    for (std::size_t i = 0; i < ivs.size(); ++i)
      if (overlap[i] && ivs[i].hi - ivs[i].lo > floor_width) {
        chart.halve(ivs[i]);
        progressed = true;
      }
    if (!progressed) return;
  }
}

inline void finish_points(const RootChart& chart, std::vector<IsolatingInterval>& ivs, std::vector<CriticalPoint>& pts,
                          const Polynomial& Ft, const MorseOptions& opts) {
  separate_values(chart, ivs, Ft, opts.separation_bits);
  const Rational loc_width = Rational(1) / pow(Rational(2), opts.location_bits);
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    while (ivs[i].hi - ivs[i].lo > loc_width) chart.halve(ivs[i]);
    auto& cp = pts[i];
    cp.location = chart.box(ivs[i]);
    cp.approx.clear();
    for (const auto& c : cp.location) cp.approx.push_back(c.approx());
    cp.value = evaluate(Ft, cp.location);
    cp.value_approx = Ft.evaluate_double(cp.approx);
  }
}

inline std::vector<std::vector<Polynomial>> hessian_of(const Polynomial& Ft) {
  const std::size_t n = Ft.ring().size();
  std::vector<std::vector<Polynomial>> H(n, std::vector<Polynomial>(n, Polynomial(Ft.ring_ptr())));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) H[i][j] = Ft.derivative(i).derivative(j);
  return H;
}

inline double hessian_det_double(const std::vector<std::vector<Polynomial>>& H, const std::vector<double>& x) {
  if (H.size() == 1) return H[0][0].evaluate_double(x);
  const double a = H[0][0].evaluate_double(x), b = H[0][1].evaluate_double(x), d = H[1][1].evaluate_double(x);
  return a * d - b * b;
}

inline CriticalSet locate_1d(const Polynomial& Ft, const MorseOptions& opts) {
  const Rational r = opts.box_radius;
  const UPoly f = UPoly::from_polynomial(Ft, 0);
  const UPoly d = f.derivative();
  CriticalSet out;
  out.elimination = d;
  out.complex_count = d.degree() > 0 ? static_cast<std::size_t>(d.degree()) : 0;
  if (d.degree() <= 0) {
    if (d.is_zero()) fail(ErrorKind::DegenerateParameter, "F_t is constant");
    return out;
  }
  const UPoly s = squarefree_part(d);
  if (s.degree() <= 0) return out;
  const SturmChain sc(s);
  if (sc.count_all() != count_real_roots(d, -r, r))
    fail(ErrorKind::BoxEscape, "real critical points outside the box of radius " + to_string(r));
  auto ivs = isolate_real_roots(d, -r, r);
  for (const auto& iv : ivs)
    if (iv.multiplicity > 1) fail(ErrorKind::DegenerateParameter, "F_t' has a multiple real root");
  if (s.degree() != d.degree()) fail(ErrorKind::DegenerateParameter, "F_t' has a multiple complex root");

  RootChart chart{s, {}, 0, 1};
  const auto H = hessian_of(Ft);
  for (auto& iv : ivs) out.points.push_back(classify(chart, iv, Ft, H, opts));
  finish_points(chart, ivs, out.points, Ft, opts);
  for (auto& cp : out.points) cp.hessian_det = hessian_det_double(H, cp.approx);
  return out;
}

inline CriticalSet locate_2d(const Polynomial& Ft, const MorseOptions& opts) {
  const RingPtr zr = Ft.ring_ptr();
  const RingPtr r3 = make_ring({zr->name(0), zr->name(1), "#s"});
  const Polynomial fz = Ft.derivative(0).to_ring(r3);
  const Polynomial fw = Ft.derivative(1).to_ring(r3);
  const Polynomial z = Polynomial::variable(r3, 0);
  const Polynomial s_var = Polynomial::variable(r3, 2);
  const Rational r = opts.box_radius;

  for (int c : {0, 1, -1, 2, -2, 3, -3, 5}) {
    const Polynomial sub = s_var - z * Rational(c);
    const auto gb = groebner_basis({fz.substitute(1, sub), fw.substitute(1, sub)}, MonomialOrder::lex(), opts.groebner);
    CriticalSet out;
    out.shear = c;
    if (gb.size() == 1 && gb[0].is_constant()) {
      out.elimination = UPoly::constant(1);
      return out;
    }
    if (gb.size() != 2) continue;
    const Polynomial& qp = gb[0];
    const Polynomial& lin = gb[1];
    if (qp.degree_in(0) != 0 || qp.degree_in(1) != 0) continue;
    if (lin.degree_in(0) != 1 || lin.degree_in(1) != 0) continue;
    const Polynomial rest = lin - z;
    if (rest.degree_in(0) != 0) continue;

    const UPoly q = UPoly::from_polynomial(qp, 2);
    const UPoly h = UPoly::from_polynomial(-rest, 2);
    if (gcd(q, q.derivative()).degree() > 0)
      fail(ErrorKind::DegenerateParameter, "critical system is not reduced (multiple critical point)");
    out.elimination = q;
    out.complex_count = static_cast<std::size_t>(q.degree());
    if (q.degree() <= 0) return out;

    RootChart chart{q, h, c, 2};
    auto ivs = isolate_real_roots(q);
    for (auto& iv : ivs) {
      unsigned tries = 0;
      for (;;) {
        const auto box = chart.box(iv);
        bool inside = true, outside = false;
        for (const auto& b : box) {
          if (b.lo < -r || b.hi > r) inside = false;
          if (b.hi < -r || b.lo > r) outside = true;
        }
        if (outside) fail(ErrorKind::BoxEscape, "real critical point outside the box of radius " + to_string(r));
        if (inside) break;
        if (++tries > opts.max_halvings)
          fail(ErrorKind::BoxEscape, "critical point on the boundary of the box of radius " + to_string(r));
        chart.halve(iv);
      }
    }
    const auto H = hessian_of(Ft);
    for (auto& iv : ivs) out.points.push_back(classify(chart, iv, Ft, H, opts));
    finish_points(chart, ivs, out.points, Ft, opts);
    // the certified count must match the elimination data
    if (out.points.size() != static_cast<std::size_t>(SturmChain(q).count_all()))
      fail(ErrorKind::DegenerateParameter, "located critical points disagree with the eliminant");
    for (auto& cp : out.points) cp.hessian_det = hessian_det_double(H, cp.approx);
    return out;
  }
  fail(ErrorKind::DegenerateParameter, "critical system has no shape-position shear (non-reduced or degenerate)");
}

}  // namespace detail

inline CriticalSet locate_critical_points(const Unfolding& u, const ParameterPoint& t, const MorseOptions& opts = {}) {
  if (opts.box_radius <= 0) fail(ErrorKind::Precondition, "box radius must be positive");
  const Polynomial Ft = specialize(u, t);
  if (u.n() == 1) return detail::locate_1d(Ft, opts);
  if (u.n() == 2) return detail::locate_2d(Ft, opts);
  fail(ErrorKind::UnsupportedDimension, "critical point location supports n = 1 or 2, got n = " + std::to_string(u.n()));
}

inline std::vector<CriticalPoint> critical_points(const Unfolding& u, const ParameterPoint& t,
                                                  const MorseOptions& opts = {}) {
  return locate_critical_points(u, t, opts).points;
}

inline MorseReport morse_counts(const std::vector<CriticalPoint>& points, std::size_t n, ParameterPoint t = {}) {
  MorseReport rep;
  rep.t = std::move(t);
  rep.points = points;
  rep.counts.assign(n + 1, 0);
  for (const auto& p : points) rep.counts.at(static_cast<std::size_t>(p.index)) += 1;
  for (std::size_t i = 0; i <= n; ++i) rep.alt_sum += (i % 2 == 0 ? 1 : -1) * rep.counts[i];
  rep.degree = (n % 2 == 0) ? rep.alt_sum : -rep.alt_sum;
  rep.excellent = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].hessian_det_sign == 0) rep.excellent = false;
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (!points[i].value.disjoint(points[j].value)) rep.excellent = false;
  }
  return rep;
}

inline MorseReport morse_report(const Unfolding& u, const ParameterPoint& t, const MorseOptions& opts = {}) {
  return morse_counts(critical_points(u, t, opts), u.n(), t);
}

struct ScanOptions {
  std::size_t samples = 100;  // accepted samples wanted
  Rational delta{1};
  std::uint64_t seed = 0;
  std::size_t max_draws = 0;  // 0: 20 * samples
  MorseOptions morse{};
};

struct ScanSample {
  std::size_t draw = 0;
  ParameterPoint t;
  std::vector<int> counts;
  int alt_sum = 0;
};

struct ScanReport {
  int alt_sum = 0;
  int degree = 0;
  std::size_t draws = 0;
  std::size_t accepted = 0;
  std::size_t rejected_degenerate = 0;
  std::size_t rejected_escape = 0;
  std::size_t rejected_not_excellent = 0;
  std::size_t sign_violations = 0;
  std::size_t points_checked = 0;
  std::map<std::vector<int>, std::size_t> histogram;
  std::vector<ScanSample> samples;
};

inline ScanReport degree_invariance_scan(const Unfolding& u, const ScanOptions& opts) {
  if (opts.samples < 2) fail(ErrorKind::Precondition, "degree scan needs at least 2 samples");
  if (opts.delta <= 0) fail(ErrorKind::Precondition, "parameter radius must be positive");
  const std::size_t max_draws = opts.max_draws ? opts.max_draws : 20 * opts.samples;
  SampleStream rng(opts.seed);
  ScanReport rep;
  std::optional<ScanSample> first;
  while (rep.accepted < opts.samples && rep.draws < max_draws) {
    const std::size_t draw = rep.draws++;
    ParameterPoint t{rng.point_in_box(u.num_params(), opts.delta)};
    MorseReport m;
    try {
      m = morse_report(u, t, opts.morse);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DegenerateParameter) {
        ++rep.rejected_degenerate;
        continue;
      }
      if (e.kind() == ErrorKind::BoxEscape) {
        ++rep.rejected_escape;
        continue;
      }
      throw;
    }
    if (!m.excellent) {
      ++rep.rejected_not_excellent;
      continue;
    }
    for (const auto& p : m.points) {
      ++rep.points_checked;
      if (!sign_relation_check(p.hessian_det_sign, p.index, u.n())) ++rep.sign_violations;
    }
    ScanSample s{draw, t, m.counts, m.alt_sum};
    if (!first) {
      first = s;
    } else if (first->alt_sum != s.alt_sum) {
      fail(ErrorKind::InconsistentDegree, "alternating sum " + std::to_string(first->alt_sum) + " at draw " +
                                              std::to_string(first->draw) + " but " + std::to_string(s.alt_sum) +
                                              " at draw " + std::to_string(s.draw));
    }
    ++rep.accepted;
    rep.histogram[s.counts] += 1;
    rep.samples.push_back(std::move(s));
  }
  if (rep.accepted < 2)
    fail(ErrorKind::InsufficientAcceptance,
         "only " + std::to_string(rep.accepted) + " accepted samples in " + std::to_string(rep.draws) + " draws");
  rep.alt_sum = first->alt_sum;
  rep.degree = (u.n() % 2 == 0) ? rep.alt_sum : -rep.alt_sum;
  return rep;
}

struct EulerReport {
  bool vacuous = false;
  int alt_sum = 0;
  Rational epsilon;
  Rational lambda_above, lambda_below;
  int chi_above = 0;
  int chi_below = 0;
  int fiber_count = 0;  // vacuous case: points of F_t = 0 in the box
  bool holds = false;
};

/// Fiber cardinalities of F_t above and below the critical values (n = 1).
inline EulerReport euler_fiber_check(const Unfolding& u, const ParameterPoint& t, const MorseOptions& opts = {}) {
  if (u.n() != 1) fail(ErrorKind::UnsupportedDimension, "Euler fiber check needs n = 1");
  const MorseReport m = morse_report(u, t, opts);
  const UPoly f = UPoly::from_polynomial(specialize(u, t), 0);
  const Rational r = opts.box_radius;
  EulerReport rep;
  rep.alt_sum = m.alt_sum;
  if (m.points.empty()) {
    rep.vacuous = true;
    rep.fiber_count = count_real_roots(f, -r, r);
    rep.holds = (m.alt_sum == 0);
    return rep;
  }
  std::vector<RInterval> vals;
  for (const auto& p : m.points) vals.push_back(p.value);
  std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  // overlapping value intervals are one level; a single level has no gap,
  // one tenth of a unit then
  std::vector<RInterval> levels{vals.front()};
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i].lo <= levels.back().hi) levels.back().hi = std::max(levels.back().hi, vals[i].hi);
    else levels.push_back(vals[i]);
  }
  Rational gap(1);
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const Rational g = levels[i + 1].lo - levels[i].hi;
    if (i == 0 || g < gap) gap = g;
  }
  rep.epsilon = gap / 10;
  rep.lambda_above = levels.back().hi + rep.epsilon;
  rep.lambda_below = levels.front().lo - rep.epsilon;
  rep.chi_above = count_real_roots(f - UPoly::constant(rep.lambda_above), -r, r);
  rep.chi_below = count_real_roots(f - UPoly::constant(rep.lambda_below), -r, r);
  rep.holds = (rep.chi_above - rep.chi_below == 2 * m.alt_sum);
  return rep;
}

struct EulerScanSample {
  std::size_t draw = 0;
  ParameterPoint t;
  EulerReport report;
};

struct EulerScan {
  std::size_t draws = 0;
  std::size_t failures = 0;
  std::vector<EulerScanSample> samples;
};

/// Euler fiber check at accepted (excellent, in-box) random parameters.
inline EulerScan euler_scan(const Unfolding& u, std::size_t samples, const Rational& delta, std::uint64_t seed,
                            const MorseOptions& opts = {}, std::size_t max_draws = 0) {
  if (u.n() != 1) fail(ErrorKind::UnsupportedDimension, "Euler fiber check needs n = 1");
  if (samples == 0) fail(ErrorKind::Precondition, "Euler scan needs at least one sample");
  if (max_draws == 0) max_draws = 20 * samples;
  SampleStream rng(seed);
  EulerScan out;
  while (out.samples.size() < samples && out.draws < max_draws) {
    const std::size_t draw = out.draws++;
    ParameterPoint t{rng.point_in_box(u.num_params(), delta)};
    try {
      if (!morse_report(u, t, opts).excellent) continue;
      EulerScanSample s{draw, t, euler_fiber_check(u, t, opts)};
      if (!s.report.holds) ++out.failures;
      out.samples.push_back(std::move(s));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DegenerateParameter || e.kind() == ErrorKind::BoxEscape) continue;
      throw;
    }
  }
  if (out.samples.size() < samples)
    fail(ErrorKind::InsufficientAcceptance, "only " + std::to_string(out.samples.size()) + " accepted samples in " +
                                                std::to_string(out.draws) + " draws");
  return out;
}

struct HermanWitness {
  std::size_t draw = 0;
  ParameterPoint t;
  UPoly elimination;
  std::string certificate;
};

/// First sampled t whose F_t has no critical point in the box.
inline std::optional<HermanWitness> herman_probe(const Unfolding& u, std::size_t budget, const Rational& delta,
                                                 std::uint64_t seed, const MorseOptions& opts = {}) {
  SampleStream rng(seed);
  for (std::size_t draw = 0; draw < budget; ++draw) {
    ParameterPoint t{rng.point_in_box(u.num_params(), delta)};
    CriticalSet cs;
    try {
      cs = locate_critical_points(u, t, opts);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DegenerateParameter || e.kind() == ErrorKind::BoxEscape) continue;
      throw;
    }
    if (!cs.points.empty()) continue;
    HermanWitness w{draw, t, cs.elimination, {}};
    const int real_roots = cs.elimination.degree() > 0 ? SturmChain(squarefree_part(cs.elimination)).count_all() : 0;
    const std::string var = u.n() == 1 ? u.ring->name(0) : "s";
    w.certificate = (u.n() == 1 ? "F_t' = " : "eliminant q(s) = ") + cs.elimination.to_string(var) +
                    " has " + std::to_string(real_roots) + " real roots (Sturm)";
    return w;
  }
  return std::nullopt;
}

}  // namespace singlab
