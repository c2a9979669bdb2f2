#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "singlab/critmap.hpp"
#include "singlab/discriminant.hpp"
#include "singlab/milnor.hpp"
#include "singlab/morselab.hpp"
#include "singlab/semitoric.hpp"

namespace singlab {

using Json = nlohmann::ordered_json;

namespace report {

inline Json rational(const Rational& q) { return to_string(q); }

inline Json parameters(const ParameterPoint& t) {
  Json a = Json::array();
  for (const auto& v : t.t) a.push_back(rational(v));
  return a;
}

inline Json interval(const RInterval& iv) { return Json::array({rational(iv.lo), rational(iv.hi)}); }

inline Json monomials(const Ring& ring, const std::vector<Exponents>& es) {
  Json a = Json::array();
  for (const auto& e : es) {
    const auto s = monomial_string(ring, e);
    a.push_back(s.empty() ? "1" : s);
  }
  return a;
}

inline Json polynomials(const std::vector<Polynomial>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

inline Json error(const Error& e) {
  return Json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
}

inline Json analysis(const GermAnalysis& a) {
  return Json{{"germ", a.f.to_string()},
              {"variables", a.f.ring().names()},
              {"n", a.n},
              {"order", a.order},
              {"mu", a.mu},
              {"cobasis", monomials(a.f.ring(), a.cobasis)},
              {"quadratic_signature", Json::array({a.q_plus, a.q_minus})}};
}

inline Json unfolding(const Unfolding& u) {
  Json params = Json::array();
  for (std::size_t k = 0; k < u.num_params(); ++k)
    params.push_back(Json{{"name", param_name(k)}, {"monomial", u.g(k).to_string()}});
  return Json{{"germ", u.analysis.f.to_string()}, {"mu", u.analysis.mu}, {"parameters", params}, {"F", u.F.to_string()}};
}

inline Json identity(const JacobianIdentity& j) {
  return Json{{"holds", j.holds}, {"jacobian", j.jacobian.to_string()}, {"signed_hessian", j.signed_hessian.to_string()}};
}

inline Json point(const CriticalPoint& p) {
  Json loc = Json::array();
  for (const auto& iv : p.location) loc.push_back(interval(iv));
  return Json{{"location", p.approx},
              {"location_intervals", loc},
              {"value", p.value_approx},
              {"value_interval", interval(p.value)},
              {"index", p.index},
              {"hessian_sign", p.hessian_det_sign}};
}

inline Json points(const std::vector<CriticalPoint>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(point(p));
  return a;
}

inline Json morse(const MorseReport& m) {
  return Json{{"t", parameters(m.t)},      {"points", points(m.points)},   {"counts", m.counts},
              {"alt_sum", m.alt_sum},      {"degree", m.degree},           {"excellent", m.excellent}};
}

inline Json scan(const ScanReport& s) {
  Json hist = Json::array();
  for (const auto& [counts, k] : s.histogram) hist.push_back(Json{{"counts", counts}, {"samples", k}});
  return Json{{"alt_sum", s.alt_sum},
              {"degree", s.degree},
              {"draws", s.draws},
              {"accepted", s.accepted},
              {"rejected", Json{{"degenerate", s.rejected_degenerate},
                                {"box_escape", s.rejected_escape},
                                {"not_excellent", s.rejected_not_excellent}}},
              {"points_checked", s.points_checked},
              {"sign_violations", s.sign_violations},
              {"histogram", hist}};
}

inline Json euler(const EulerReport& e) {
  Json j{{"vacuous", e.vacuous}, {"alt_sum", e.alt_sum}};
  if (e.vacuous) {
    j["fiber_count"] = e.fiber_count;
  } else {
    j["epsilon"] = rational(e.epsilon);
    j["lambda_above"] = rational(e.lambda_above);
    j["lambda_below"] = rational(e.lambda_below);
    j["chi_above"] = e.chi_above;
    j["chi_below"] = e.chi_below;
  }
  j["holds"] = e.holds;
  return j;
}

inline Json herman(const std::optional<HermanWitness>& w) {
  if (!w) return Json{{"found", false}};
  return Json{{"found", true},
              {"draw", w->draw},
              {"t", parameters(w->t)},
              {"certificate", w->certificate}};
}

inline Json cerf(const CerfTrace& c) {
  Json events = Json::array();
  for (const auto& e : c.events)
    events.push_back(Json{{"step", e.step},
                          {"kind", e.kind},
                          {"s", rational(e.s)},
                          {"t", parameters(e.t)},
                          {"values", e.values},
                          {"indices", e.indices},
                          {"witness", e.witness},
                          {"note", e.note}});
  std::size_t degenerate = 0;
  for (const auto& s : c.samples) degenerate += s.degenerate ? 1 : 0;
  Json path = Json::array();
  for (const auto& b : c.path.breakpoints) path.push_back(parameters(b));
  return Json{{"path", path}, {"steps", c.samples.size()}, {"degenerate_steps", degenerate}, {"events", events}};
}

inline Json maxwell(const std::vector<MaxwellPoint>& ms) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(Json{{"t", parameters(m.t)}, {"minima", points(m.minima)}, {"gap", m.gap}});
  return a;
}

inline Json equal_level(const std::optional<EqualLevelResult>& r) {
  if (!r) return Json{{"found", false}};
  return Json{{"found", true},          {"t", parameters(r->t)}, {"points", points(r->points)},
              {"spread", r->spread},    {"singleton", r->singleton}, {"draws", r->draws}};
}

inline Json semigroup(const NumericalSemigroup& s) {
  return Json{{"generators", s.generators},
              {"conductor", s.conductor},
              {"frobenius", s.frobenius()},
              {"gaps", s.gaps()},
              {"apery", s.apery}};
}

inline Json toric(const ToricIdeal& t) {
  Json bins = Json::array();
  for (const auto& b : t.binomials)
    bins.push_back(Json{{"lhs", monomial_string(*t.ring, b.lhs)},
                        {"rhs", monomial_string(*t.ring, b.rhs)},
                        {"lambda", rational(b.lambda)}});
  return Json{{"weights", t.weights}, {"basis", polynomials(t.basis)}, {"binomials", bins}};
}

inline Json certificate(const ResolutionCertificate& c) {
  Json cones = Json::array();
  for (const auto& cone : c.fan) cones.push_back(cone.rays);
  return Json{{"cones", cones}, {"chart", c.chart}, {"a", c.a}};
}

inline Json strict_transform(const StrictTransformReport& r) {
  Json units = Json::array(), coords = Json::array();
  for (const auto& u : r.leading_units) units.push_back(rational(u));
  for (std::size_t j = 0; j < r.coordinates.size(); ++j) coords.push_back(r.coordinates[j].to_string("t"));
  return Json{{"pass", r.pass},
              {"orders", r.orders},
              {"leading_units", units},
              {"coordinates", coords},
              {"precision", r.precision},
              {"note", r.note}};
}

inline Json weight_value(const std::optional<long>& w) { return w ? Json(*w) : Json("inf"); }

inline Json overweight(const std::vector<OverweightVerdict>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) {
    Json j{{"verdict", v.pass ? "PASS" : "FAIL"}, {"weight", weight_value(v.weight)}};
    if (v.expected_weight) j["expected_weight"] = *v.expected_weight;
    j["initial_form"] = v.initial.to_string();
    j["note"] = v.note;
    a.push_back(std::move(j));
  }
  return a;
}

// ---------------------------------------------------------------- CSV

inline std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string scan_csv(const ScanReport& s, std::size_t params, std::size_t n) {
  std::ostringstream out;
  out << "draw";
  for (std::size_t k = 0; k < params; ++k) out << ",t" << k + 1;
  for (std::size_t i = 0; i <= n; ++i) out << ",N" << i;
  out << ",alt_sum\n";
  for (const auto& row : s.samples) {
    out << row.draw;
    for (const auto& v : row.t.t) out << ',' << to_string(v);
    for (int c : row.counts) out << ',' << c;
    out << ',' << row.alt_sum << '\n';
  }
  return out.str();
}

inline std::string cerf_csv(const CerfTrace& c) {
  std::ostringstream out;
  out << "step,s,point,index,value,location\n";
  for (const auto& st : c.samples) {
    if (st.degenerate) {
      out << st.step << ',' << to_string(st.s) << ",,,,\n";
      continue;
    }
    for (std::size_t k = 0; k < st.points.size(); ++k) {
      const auto& p = st.points[k];
      out << st.step << ',' << to_string(st.s) << ',' << k << ',' << p.index << ',' << csv_number(p.value_approx) << ',';
      for (std::size_t i = 0; i < p.approx.size(); ++i) out << (i ? " " : "") << csv_number(p.approx[i]);
      out << '\n';
    }
  }
  return out.str();
}

// ---------------------------------------------------------------- SVG

inline std::string svg_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

/// Critical values against the path coordinate; events as circles.
inline std::string cerf_svg(const CerfTrace& c) {
  const double W = 640, H = 400, pad = 40;
  double lo = 0, hi = 0;
  bool any = false;
  for (const auto& st : c.samples)
    for (const auto& p : st.points) {
      lo = any ? std::min(lo, p.value_approx) : p.value_approx;
      hi = any ? std::max(hi, p.value_approx) : p.value_approx;
      any = true;
    }
  if (!any || hi - lo < 1e-12) {
    lo -= 1;
    hi += 1;
  }
  auto X = [&](double s) { return pad + s * (W - 2 * pad); };
  auto Y = [&](double v) { return H - pad - (v - lo) / (hi - lo) * (H - 2 * pad); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << ' ' << H << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\"" << H - pad
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << H - pad
      << "\" stroke=\"black\"/>\n";
  // Runs of consecutive steps with a constant point count form the branches.
  std::size_t k = 0;
  while (k < c.samples.size()) {
    if (c.samples[k].degenerate) {
      ++k;
      continue;
    }
    std::size_t end = k;
    const std::size_t m = c.samples[k].points.size();
    while (end + 1 < c.samples.size() && !c.samples[end + 1].degenerate && c.samples[end + 1].points.size() == m) ++end;
    for (std::size_t i = 0; i < m; ++i) {
      const int idx = std::clamp(c.samples[k].points[i].index, 0, 3);
      out << "<polyline fill=\"none\" stroke=\"" << colors[idx] << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t j = k; j <= end; ++j) {
        const auto& st = c.samples[j];
        out << (j > k ? " " : "") << svg_number(X(to_double(st.s))) << ',' << svg_number(Y(st.points[i].value_approx));
      }
      out << "\"/>\n";
    }
    k = end + 1;
  }
  for (const auto& e : c.events) {
    const double v = e.values.empty() ? lo : e.values.front();
    out << "<circle cx=\"" << svg_number(X(to_double(e.s))) << "\" cy=\"" << svg_number(Y(v))
        << "\" r=\"5\" fill=\"none\" stroke=\"black\"><title>" << e.kind << "</title></circle>\n";
  }
  out << "</svg>\n";
  return out.str();
}

/// Cells of a (lambda, t) slice coloured by the discriminant sign.
inline std::string slice_svg(const SliceGrid& g) {
  const double cell = std::max(2.0, std::floor(480.0 / static_cast<double>(g.grid)));
  const double side = cell * static_cast<double>(g.grid);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side << "\" viewBox=\"0 0 "
      << side << ' ' << side << "\">\n";
  for (const auto& c : g.cells) {
    const char* fill = c.side > 0 ? "#fdd49e" : (c.side < 0 ? "#c6dbef" : "#252525");
    out << "<rect x=\"" << svg_number(static_cast<double>(c.i) * cell) << "\" y=\""
        << svg_number(static_cast<double>(g.grid - 1 - c.j) * cell) << "\" width=\"" << cell << "\" height=\"" << cell
        << "\" fill=\"" << fill << "\"><title>" << c.count << "</title></rect>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace report
}  // namespace singlab
