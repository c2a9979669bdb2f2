#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "singlab/report.hpp"

namespace singlab {

inline constexpr const char* kManifestSchema = "singlab.manifest/1";
inline constexpr const char* kReportSchema = "singlab.report/1";

/// Schema violation with the offending field and its source line.
class ManifestError : public Error {
 public:
  ManifestError(std::string field, int line, const std::string& what)
      : Error(ErrorKind::Schema, what), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

struct Assertion {
  std::string path;
  std::string op;  // equals, at_least, at_most, abs_below, contains
  Json value;
};

struct ManifestOutputs {
  std::string report, scan_csv, cerf_csv, cerf_svg, slice_svg, certificate, log;
};

struct Manifest {
  std::string name;
  std::string germ;
  std::vector<std::string> variables;
  Rational box_radius{4};
  Rational delta{1};
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  double value_tol = 1e-8;
  double degeneracy_margin = 1e-6;
  std::uint64_t budget = GroebnerOptions{}.max_steps;
  std::vector<std::string> stages;

  std::optional<ParameterPoint> morse_t;
  std::size_t euler_samples = 20;
  std::size_t herman_budget = 100;
  std::vector<ParameterPoint> cerf_path;
  std::size_t cerf_steps = 100;
  std::size_t maxwell_samples = 200;
  int equal_level_index = 0;
  std::size_t equal_level_budget = 2000;
  std::size_t slice_grid = 40;
  std::size_t slice_axis = 0;
  std::optional<ParameterPoint> slice_fixed;

  std::string branch;
  std::vector<long> generators;
  std::vector<long> overweight_weights;
  std::vector<std::string> overweight_series;
  std::vector<std::string> overweight_expected;

  std::vector<Assertion> assertions;
  ManifestOutputs outputs;
};

inline const std::vector<std::string>& pipeline_stages() {
  static const std::vector<std::string> s{"analyze",      "unfold",       "verify-identity", "morse",
                                          "degree-scan",  "euler-check",  "herman-probe",    "discriminant",
                                          "cerf",         "maxwell",      "equal-level",     "slice",
                                          "semigroup",    "toric-ideal",  "toric-resolve",   "strict-transform",
                                          "overweight"};
  return s;
}

namespace detail {

inline int line_of(const std::string& text, std::size_t pos) {
  int line = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) line += text[i] == '\n' ? 1 : 0;
  return line;
}

/// Reads typed fields and reports violations by dotted name and line.
class ManifestReader {
 public:
  explicit ManifestReader(const std::string& text) : text_(text) {}

  [[noreturn]] void error(const std::string& field, const std::string& msg) const {
    const std::string key = field.substr(field.rfind('.') + 1);
    const auto pos = text_.find('"' + key + '"');
    const int line = pos == std::string::npos ? 0 : line_of(text_, pos);
    throw ManifestError(field, line, "field '" + field + "'" + (line ? " (line " + std::to_string(line) + ")" : "") + ": " + msg);
  }

  void only(const Json& obj, const std::string& prefix, const std::set<std::string>& allowed) const {
    for (const auto& [k, v] : obj.items())
      if (!allowed.count(k)) error(prefix + k, "unknown field");
  }

  const Json* find(const Json& obj, const std::string& key) const {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  Rational rational(const Json& v, const std::string& field) const {
    try {
      if (v.is_string()) return parse_rational(v.get<std::string>());
      if (v.is_number()) return parse_rational(v.dump());
    } catch (const Error&) {
    }
    error(field, "expected a rational number");
  }

  Rational positive_rational(const Json& v, const std::string& field) const {
    const Rational r = rational(v, field);
    if (r <= 0) error(field, "must be positive");
    return r;
  }

  std::uint64_t positive_integer(const Json& v, const std::string& field) const {
    if (!v.is_number_integer()) error(field, "expected an integer");
    if (v.is_number_unsigned() ? v.get<std::uint64_t>() == 0 : v.get<std::int64_t>() <= 0) error(field, "must be positive");
    return v.get<std::uint64_t>();
  }

  std::uint64_t nonnegative_integer(const Json& v, const std::string& field) const {
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
      error(field, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
  }

  double positive_double(const Json& v, const std::string& field) const {
    if (!v.is_number()) error(field, "expected a number");
    const double d = v.get<double>();
    if (!(d > 0)) error(field, "must be positive");
    return d;
  }

  std::string string(const Json& v, const std::string& field) const {
    if (!v.is_string()) error(field, "expected a string");
    return v.get<std::string>();
  }

  std::vector<std::string> strings(const Json& v, const std::string& field) const {
    if (!v.is_array()) error(field, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(string(x, field));
    return out;
  }

  std::vector<long> longs(const Json& v, const std::string& field) const {
    if (!v.is_array() || v.empty()) error(field, "expected a nonempty array of integers");
    std::vector<long> out;
    for (const auto& x : v) out.push_back(static_cast<long>(positive_integer(x, field)));
    return out;
  }

  ParameterPoint point(const Json& v, const std::string& field) const {
    if (!v.is_array()) error(field, "expected an array of rationals");
    ParameterPoint p;
    for (const auto& x : v) p.t.push_back(rational(x, field));
    return p;
  }

 private:
  const std::string& text_;
};

}  // namespace detail

inline Manifest parse_manifest(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const int line = detail::line_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ManifestError("", line, "malformed JSON at line " + std::to_string(line) + ": " + e.what());
  }
  detail::ManifestReader r(text);
  if (!j.is_object()) r.error("", "manifest must be a JSON object");
  r.only(j, "", {"schema", "name", "germ", "variables", "box_radius", "delta", "samples", "seed", "tolerances", "budget",
                 "stages", "morse", "euler", "herman", "cerf", "maxwell", "equal_level", "slice", "semitoric",
                 "assertions", "outputs"});
  Manifest m;
  const Json* schema = r.find(j, "schema");
  if (!schema) r.error("schema", "missing (expected \"" + std::string(kManifestSchema) + "\")");
  if (r.string(*schema, "schema") != kManifestSchema)
    r.error("schema", "unsupported version '" + schema->get<std::string>() + "'");
  if (auto v = r.find(j, "name")) m.name = r.string(*v, "name");
  if (auto v = r.find(j, "germ")) m.germ = r.string(*v, "germ");
  if (auto v = r.find(j, "variables")) m.variables = r.strings(*v, "variables");
  if (auto v = r.find(j, "box_radius")) m.box_radius = r.positive_rational(*v, "box_radius");
  if (auto v = r.find(j, "delta")) m.delta = r.positive_rational(*v, "delta");
  if (auto v = r.find(j, "samples")) m.samples = r.positive_integer(*v, "samples");
  if (auto v = r.find(j, "seed")) m.seed = r.nonnegative_integer(*v, "seed");
  if (auto v = r.find(j, "budget")) m.budget = r.positive_integer(*v, "budget");
  if (auto v = r.find(j, "tolerances")) {
    if (!v->is_object()) r.error("tolerances", "expected an object");
    r.only(*v, "tolerances.", {"value_equality", "degeneracy_margin"});
    if (auto w = r.find(*v, "value_equality")) m.value_tol = r.positive_double(*w, "tolerances.value_equality");
    if (auto w = r.find(*v, "degeneracy_margin")) m.degeneracy_margin = r.positive_double(*w, "tolerances.degeneracy_margin");
  }
  const Json* stages = r.find(j, "stages");
  if (!stages) r.error("stages", "missing");
  m.stages = r.strings(*stages, "stages");
  const auto& known = pipeline_stages();
  bool needs_germ = false, needs_semitoric = false;
  for (const auto& s : m.stages) {
    const auto it = std::find(known.begin(), known.end(), s);
    if (it == known.end()) r.error("stages", "unknown stage '" + s + "'");
    (it - known.begin() < 12 ? needs_germ : needs_semitoric) = true;
  }
  if (needs_germ && m.germ.empty()) r.error("germ", "required by the declared stages");

  auto section = [&](const char* key, const std::set<std::string>& allowed) -> const Json* {
    const Json* v = r.find(j, key);
    if (!v) return nullptr;
    if (!v->is_object()) r.error(key, "expected an object");
    r.only(*v, std::string(key) + ".", allowed);
    return v;
  };
  if (auto s = section("morse", {"t"}))
    if (auto v = r.find(*s, "t")) m.morse_t = r.point(*v, "morse.t");
  if (auto s = section("euler", {"samples"}))
    if (auto v = r.find(*s, "samples")) m.euler_samples = r.positive_integer(*v, "euler.samples");
  if (auto s = section("herman", {"budget"}))
    if (auto v = r.find(*s, "budget")) m.herman_budget = r.positive_integer(*v, "herman.budget");
  if (auto s = section("cerf", {"path", "steps"})) {
    if (auto v = r.find(*s, "path")) {
      if (!v->is_array() || v->size() < 2) r.error("cerf.path", "expected at least two parameter points");
      for (const auto& p : *v) m.cerf_path.push_back(r.point(p, "cerf.path"));
    }
    if (auto v = r.find(*s, "steps")) m.cerf_steps = r.positive_integer(*v, "cerf.steps");
  }
  if (auto s = section("maxwell", {"samples"}))
    if (auto v = r.find(*s, "samples")) m.maxwell_samples = r.positive_integer(*v, "maxwell.samples");
  if (auto s = section("equal_level", {"index", "budget"})) {
    if (auto v = r.find(*s, "index")) m.equal_level_index = static_cast<int>(r.nonnegative_integer(*v, "equal_level.index"));
    if (auto v = r.find(*s, "budget")) m.equal_level_budget = r.positive_integer(*v, "equal_level.budget");
  }
  if (auto s = section("slice", {"grid", "axis", "fixed"})) {
    if (auto v = r.find(*s, "grid")) m.slice_grid = r.positive_integer(*v, "slice.grid");
    if (auto v = r.find(*s, "axis")) m.slice_axis = r.nonnegative_integer(*v, "slice.axis");
    if (auto v = r.find(*s, "fixed")) m.slice_fixed = r.point(*v, "slice.fixed");
  }
  if (auto s = section("semitoric", {"branch", "generators", "overweight"})) {
    if (auto v = r.find(*s, "branch")) m.branch = r.string(*v, "semitoric.branch");
    if (auto v = r.find(*s, "generators")) m.generators = r.longs(*v, "semitoric.generators");
    if (auto v = r.find(*s, "overweight")) {
      if (!v->is_object()) r.error("semitoric.overweight", "expected an object");
      r.only(*v, "semitoric.overweight.", {"weights", "series", "expected"});
      if (auto w = r.find(*v, "weights")) m.overweight_weights = r.longs(*w, "semitoric.overweight.weights");
      if (auto w = r.find(*v, "series")) m.overweight_series = r.strings(*w, "semitoric.overweight.series");
      if (auto w = r.find(*v, "expected")) m.overweight_expected = r.strings(*w, "semitoric.overweight.expected");
    }
  }
  if (needs_semitoric && m.branch.empty() && m.generators.empty())
    r.error("semitoric", "a branch or generators are required by the declared stages");
  if (std::count(m.stages.begin(), m.stages.end(), "strict-transform") && m.branch.empty())
    r.error("semitoric.branch", "required by the strict-transform stage");
  if (std::count(m.stages.begin(), m.stages.end(), "overweight") && m.overweight_series.empty())
    r.error("semitoric.overweight.series", "required by the overweight stage");
  if (std::count(m.stages.begin(), m.stages.end(), "cerf") && m.cerf_path.empty())
    r.error("cerf.path", "required by the cerf stage");

  if (auto v = r.find(j, "assertions")) {
    if (!v->is_array()) r.error("assertions", "expected an array");
    for (const auto& a : *v) {
      if (!a.is_object()) r.error("assertions", "each assertion must be an object");
      r.only(a, "assertions.", {"path", "equals", "at_least", "at_most", "abs_below", "contains"});
      Assertion as;
      const Json* p = r.find(a, "path");
      if (!p) r.error("assertions.path", "missing");
      as.path = r.string(*p, "assertions.path");
      for (const char* op : {"equals", "at_least", "at_most", "abs_below", "contains"})
        if (auto w = r.find(a, op)) {
          if (!as.op.empty()) r.error(std::string("assertions.") + op, "one comparison per assertion");
          as.op = op;
          as.value = *w;
        }
      if (as.op.empty()) r.error("assertions", "assertion on '" + as.path + "' has no comparison");
      if ((as.op == "at_least" || as.op == "at_most" || as.op == "abs_below") && !as.value.is_number())
        r.error("assertions." + as.op, "expected a number");
      m.assertions.push_back(std::move(as));
    }
  }
  if (auto s = section("outputs", {"report", "scan_csv", "cerf_csv", "cerf_svg", "slice_svg", "certificate", "log"})) {
    auto out = [&](const char* key, std::string& dst) {
      if (auto v = r.find(*s, key)) dst = r.string(*v, std::string("outputs.") + key);
    };
    out("report", m.outputs.report);
    out("scan_csv", m.outputs.scan_csv);
    out("cerf_csv", m.outputs.cerf_csv);
    out("cerf_svg", m.outputs.cerf_svg);
    out("slice_svg", m.outputs.slice_svg);
    out("certificate", m.outputs.certificate);
    out("log", m.outputs.log);
  }
  return m;
}

inline Manifest load_manifest(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ManifestError("", 0, "cannot read manifest '" + file.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

struct AssertionResult {
  Assertion assertion;
  Json actual;
  bool pass = false;
};

struct ManifestRun {
  Json report;
  bool pass = true;
  std::vector<AssertionResult> assertions;
  std::vector<std::pair<std::string, std::string>> files;  // path, contents
  std::string log;
};

namespace detail {

inline const Json* lookup(const Json& root, const std::string& path) {
  const Json* cur = &root;
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (cur->is_object()) {
      auto it = cur->find(key);
      if (it == cur->end()) return nullptr;
      cur = &*it;
    } else if (cur->is_array()) {
      if (key.empty() || !std::all_of(key.begin(), key.end(), [](unsigned char c) { return std::isdigit(c) != 0; }))
        return nullptr;
      const std::size_t k = std::stoul(key);
      if (k >= cur->size()) return nullptr;
      cur = &(*cur)[k];
    } else {
      return nullptr;
    }
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return cur;
}

inline bool check(const Assertion& a, const Json* actual) {
  if (!actual) return false;
  if (a.op == "equals") {
    if (actual->is_number() && a.value.is_number()) return actual->get<double>() == a.value.get<double>();
    return *actual == a.value;
  }
  if (a.op == "contains") {
    if (actual->is_array()) return std::find(actual->begin(), actual->end(), a.value) != actual->end();
    if (actual->is_string() && a.value.is_string())
      return actual->get<std::string>().find(a.value.get<std::string>()) != std::string::npos;
    return false;
  }
  if (!actual->is_number()) return false;
  const double x = actual->get<double>(), v = a.value.get<double>();
  if (a.op == "at_least") return x >= v;
  if (a.op == "at_most") return x <= v;
  return std::abs(x) < v;
}

}  // namespace detail

/// Runs the declared stages in pipeline order.  The report depends only on
/// the manifest; wall-clock timings go to the separate log.
inline ManifestRun run_manifest(const Manifest& m) {
  using Clock = std::chrono::steady_clock;
  ManifestRun run;
  std::ostringstream log;
  auto declared = [&](const std::string& s) { return std::count(m.stages.begin(), m.stages.end(), s) > 0; };

  MorseOptions morse;
  morse.box_radius = m.box_radius;
  morse.groebner.max_steps = m.budget;
  GroebnerOptions gopts;
  gopts.max_steps = m.budget;

  Json stages = Json::object();
  auto timed = [&](const std::string& name, auto&& body) {
    if (!declared(name)) return;
    const auto t0 = Clock::now();
    stages[name] = body();
    const auto ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    log << name << ' ' << ms << " ms\n";
  };

  std::optional<Unfolding> u;
  std::optional<GermAnalysis> analysis;
  if (!m.germ.empty()) {
    const RingPtr ring = make_ring(m.variables.empty() ? collect_variables(m.germ) : m.variables);
    analysis = analyze_germ(parse_polynomial(m.germ, ring), gopts);
  }
  auto unfolding = [&]() -> const Unfolding& {
    if (!u) u = miniversal_unfolding(*analysis);
    return *u;
  };

  timed("analyze", [&] { return report::analysis(*analysis); });
  timed("unfold", [&] { return report::unfolding(unfolding()); });
  timed("verify-identity", [&] { return report::identity(verify_jacobian_identity(unfolding())); });
  timed("morse", [&] {
    ParameterPoint t = m.morse_t ? *m.morse_t : ParameterPoint{std::vector<Rational>(unfolding().num_params(), Rational(0))};
    return report::morse(morse_report(unfolding(), t, morse));
  });
  std::optional<ScanReport> scan;
  timed("degree-scan", [&] {
    ScanOptions so;
    so.samples = m.samples;
    so.delta = m.delta;
    so.seed = m.seed;
    so.morse = morse;
    scan = degree_invariance_scan(unfolding(), so);
    return report::scan(*scan);
  });
  timed("euler-check", [&] {
    const auto es = euler_scan(unfolding(), m.euler_samples, m.delta, m.seed, morse);
    Json samples = Json::array();
    for (const auto& s : es.samples)
      samples.push_back(Json{{"draw", s.draw}, {"t", report::parameters(s.t)}, {"check", report::euler(s.report)}});
    return Json{{"accepted", es.samples.size()}, {"draws", es.draws}, {"failures", es.failures},
                {"holds", es.failures == 0}, {"samples", samples}};
  });
  timed("herman-probe", [&] {
    return report::herman(herman_probe(unfolding(), m.herman_budget, m.delta, m.seed, morse));
  });
  timed("discriminant", [&] {
    return Json{{"polynomial", exact_discriminant_1d(unfolding(), gopts).poly.to_string()}};
  });
  std::optional<CerfTrace> cerf;
  timed("cerf", [&] {
    CerfOptions co;
    co.delta = m.delta;
    co.value_tol = m.value_tol;
    co.hessian_tol = m.degeneracy_margin;
    co.morse = morse;
    cerf = cerf_trace(unfolding(), ParameterPath{m.cerf_path}, m.cerf_steps, co);
    return report::cerf(*cerf);
  });
  timed("maxwell", [&] {
    MaxwellOptions mo;
    mo.samples = m.maxwell_samples;
    mo.delta = m.delta;
    mo.seed = m.seed;
    mo.tol = m.value_tol;
    mo.morse = morse;
    return report::maxwell(maxwell_scan(unfolding(), mo));
  });
  timed("equal-level", [&] {
    EqualLevelOptions eo;
    eo.index = m.equal_level_index;
    eo.budget = m.equal_level_budget;
    eo.tol = m.value_tol;
    eo.delta = m.delta;
    eo.seed = m.seed;
    eo.morse = morse;
    return report::equal_level(equal_level_search(unfolding(), eo));
  });
  std::optional<SliceGrid> slice;
  timed("slice", [&] {
    SlicePlane plane;
    plane.axis = m.slice_axis;
    plane.fixed = m.slice_fixed ? *m.slice_fixed
                                : ParameterPoint{std::vector<Rational>(unfolding().num_params(), Rational(0))};
    slice = slice_sample(unfolding(), plane, m.slice_grid, morse);
    std::map<int, std::size_t> sides;
    for (const auto& c : slice->cells) sides[c.side] += 1;
    return Json{{"grid", slice->grid},
                {"exact", slice->exact},
                {"positive_cells", sides[1]},
                {"negative_cells", sides[-1]},
                {"boundary_cells", sides[0]}};
  });

  std::optional<PlaneBranch> branch;
  std::optional<NumericalSemigroup> semigroup;
  if (!m.branch.empty()) branch = parse_branch(m.branch);
  auto gamma = [&]() -> const NumericalSemigroup& {
    if (!semigroup) semigroup = branch ? branch_semigroup(*branch) : semigroup_from_generators(m.generators);
    return *semigroup;
  };
  std::optional<ResolutionCertificate> cert;
  auto certificate = [&]() -> const ResolutionCertificate& {
    if (!cert) cert = resolve_monomial_curve(gamma());
    return *cert;
  };
  timed("semigroup", [&] { return report::semigroup(gamma()); });
  timed("toric-ideal", [&] { return report::toric(toric_ideal(gamma(), gopts)); });
  timed("toric-resolve", [&] { return report::certificate(certificate()); });
  timed("strict-transform", [&] {
    const auto& s = gamma();
    const std::size_t P = static_cast<std::size_t>(std::max(s.conductor, s.generators.back()) + 10);
    std::vector<Series> mono;
    for (long g : s.generators) mono.push_back(Series::monomial(P, g, Rational(1)));
    const auto a = verify_strict_transform(mono, certificate());
    const auto b = verify_strict_transform(embedding_series(*branch, P), certificate());
    return Json{{"monomial_curve", report::strict_transform(a)},
                {"branch", report::strict_transform(b)},
                {"pass", a.pass && b.pass}};
  });
  timed("overweight", [&] {
    const std::vector<long> w = m.overweight_weights.empty() ? gamma().generators : m.overweight_weights;
    const RingPtr ring = toric_ring(w.size());
    std::vector<Polynomial> series;
    for (const auto& s : m.overweight_series) series.push_back(parse_polynomial(s, ring));
    std::vector<OverweightVerdict> v;
    if (m.overweight_expected.empty()) {
      v = overweight_against_ideal(toric_ideal(semigroup_from_generators(w), gopts), series);
    } else {
      std::vector<Polynomial> expected;
      for (const auto& s : m.overweight_expected) expected.push_back(parse_polynomial(s, ring));
      v = overweight_check(w, series, expected);
    }
    return Json{{"weights", w}, {"verdicts", report::overweight(v)}};
  });

  Json assertions = Json::array();
  Json doc{{"schema", kReportSchema}, {"name", m.name}, {"seed", m.seed}, {"stages", stages}};
  for (const auto& a : m.assertions) {
    const Json* actual = detail::lookup(doc, a.path);
    AssertionResult res{a, actual ? *actual : Json(nullptr), detail::check(a, actual)};
    run.pass = run.pass && res.pass;
    assertions.push_back(Json{{"path", a.path}, {a.op, a.value}, {"actual", res.actual}, {"pass", res.pass}});
    run.assertions.push_back(std::move(res));
  }
  doc["assertions"] = assertions;
  doc["pass"] = run.pass;
  run.report = std::move(doc);
  run.log = log.str();

  if (!m.outputs.report.empty()) run.files.emplace_back(m.outputs.report, run.report.dump(2) + "\n");
  if (!m.outputs.scan_csv.empty() && scan)
    run.files.emplace_back(m.outputs.scan_csv, report::scan_csv(*scan, unfolding().num_params(), unfolding().n()));
  if (!m.outputs.cerf_csv.empty() && cerf) run.files.emplace_back(m.outputs.cerf_csv, report::cerf_csv(*cerf));
  if (!m.outputs.cerf_svg.empty() && cerf) run.files.emplace_back(m.outputs.cerf_svg, report::cerf_svg(*cerf));
  if (!m.outputs.slice_svg.empty() && slice) run.files.emplace_back(m.outputs.slice_svg, report::slice_svg(*slice));
  if (!m.outputs.certificate.empty() && cert)
    run.files.emplace_back(m.outputs.certificate, report::certificate(*cert).dump(2) + "\n");
  return run;
}

/// Writes the run's files under base (relative paths) and the timing log.
inline void write_outputs(const ManifestRun& run, const Manifest& m, const std::filesystem::path& base) {
  auto write = [&](const std::string& rel, const std::string& contents) {
    const std::filesystem::path p = std::filesystem::path(rel).is_absolute() ? std::filesystem::path(rel) : base / rel;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write '" + p.string() + "'");
    out << contents;
  };
  for (const auto& [path, contents] : run.files) write(path, contents);
  if (!m.outputs.log.empty()) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::string stamp = std::ctime(&now);
    write(m.outputs.log, "started " + stamp + run.log);
  }
}

}  // namespace singlab
