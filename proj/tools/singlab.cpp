#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "singlab/manifest.hpp"

using namespace singlab;

namespace {

struct Outcome {
  Json body;
  bool ok = true;
  std::string text;  // replaces the flattened body in text mode when set
};

struct Globals {
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool json = false;
  bool quiet = false;
  std::uint64_t budget = GroebnerOptions{}.max_steps;
};

struct GermArgs {
  std::string germ;
  std::string vars;
  std::string radius = "4";
  std::string delta = "1";
};

std::uint64_t env_budget() {
  const char* raw = std::getenv("SINGLAB_BUDGET");
  const std::uint64_t fallback = GroebnerOptions{}.max_steps;
  if (!raw || !*raw) return fallback;
  const std::string s(raw);
  if (!std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; }) || s.size() > 18)
    fail(ErrorKind::Precondition, "SINGLAB_BUDGET must be a positive integer, got '" + s + "'");
  const std::uint64_t v = std::stoull(s);
  if (v == 0) fail(ErrorKind::Precondition, "SINGLAB_BUDGET must be positive");
  return v;
}

std::vector<Rational> rationals(const std::string& text) {
  std::vector<Rational> out;
  if (text.find_first_not_of(' ') == std::string::npos) return out;
  for (const auto& part : split_top_level(text)) out.push_back(parse_rational(part));
  return out;
}

std::vector<long> integers(const std::string& text) {
  std::vector<long> out;
  for (const auto& q : rationals(text)) {
    if (q.get_den() != 1) fail(ErrorKind::Parse, "expected integers, got '" + text + "'");
    out.push_back(q.get_num().get_si());
  }
  return out;
}

std::vector<ParameterPoint> path_points(const std::string& text) {
  std::vector<ParameterPoint> out;
  for (const auto& part : split_top_level(text, ';')) out.push_back(ParameterPoint{rationals(part)});
  return out;
}

GermAnalysis analysis_of(const GermArgs& g, const Globals& G) {
  std::vector<std::string> vars;
  if (!g.vars.empty())
    for (auto v : split_top_level(g.vars)) {
      v.erase(std::remove(v.begin(), v.end(), ' '), v.end());
      vars.push_back(v);
    }
  const RingPtr ring = make_ring(vars.empty() ? collect_variables(g.germ) : vars);
  return analyze_germ(parse_polynomial(g.germ, ring), GroebnerOptions{G.budget});
}

Unfolding unfolding_of(const GermArgs& g, const Globals& G) { return miniversal_unfolding(analysis_of(g, G)); }

MorseOptions morse_of(const GermArgs& g, const Globals& G) {
  MorseOptions m;
  m.box_radius = parse_rational(g.radius);
  if (m.box_radius <= 0) fail(ErrorKind::Precondition, "box radius must be positive");
  m.groebner.max_steps = G.budget;
  return m;
}

Rational delta_of(const GermArgs& g) {
  const Rational d = parse_rational(g.delta);
  if (d <= 0) fail(ErrorKind::Precondition, "parameter radius must be positive");
  return d;
}

ParameterPoint point_for(const Unfolding& u, const std::string& text) {
  ParameterPoint t{rationals(text)};
  if (t.t.size() != u.num_params())
    fail(ErrorKind::VariableMismatch, "expected " + std::to_string(u.num_params()) + " parameter values, got " +
                                          std::to_string(t.t.size()));
  return t;
}

void write_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
  out << contents;
}

void add_germ(CLI::App* sub, GermArgs& g, bool params = true) {
  sub->add_option("germ", g.germ, "Germ polynomial, e.g. \"z^3 + w^3\"")->required();
  sub->add_option("--vars", g.vars, "Comma-separated variable order");
  if (params) {
    sub->add_option("--radius", g.radius, "Critical point box radius")->capture_default_str();
    sub->add_option("--delta", g.delta, "Parameter box radius")->capture_default_str();
  }
}

void print_text(const Json& j, const std::string& prefix, std::ostream& out) {
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) print_text(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
    if (flat) {
      out << prefix << ": [";
      for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << scalar(j[i]);
      out << "]\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) print_text(j[i], prefix + "." + std::to_string(i), out);
    return;
  }
  out << prefix << ": " << scalar(j) << '\n';
}

Json error_object(const std::string& kind, const std::string& message) {
  return Json{{"error", kind}, {"message", message}};
}

int emit_error(const Json& err, const Globals& G) {
  if (G.json) std::cout << err.dump(2) << '\n';
  std::cerr << err.dump() << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  Globals G;
  CLI::App app{"Exact experiments on unfoldings of isolated hypersurface singularities and on plane branches", "singlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", G.seed, "Seed for sampled stages");
  app.add_flag("--json", G.json, "Print results as JSON");
  app.add_flag("--quiet", G.quiet, "Print nothing on success");

  std::function<Outcome()> action;
  GermArgs g;
  std::string t_text, path_text, segment_text, csv_path, svg_path, slice_svg_path, fixed_text, cert_path, branch_text,
      gens_text, weights_text, manifest_path, out_dir = ".";
  std::vector<std::string> series_texts, expected_texts;
  std::size_t samples = 100, budget = 100, steps = 100, grid = 40, axis = 0, index = 0;

  auto* analyze = app.add_subcommand("analyze", "Milnor number, local algebra basis and quadratic signature");
  add_germ(analyze, g, false);
  analyze->callback([&] { action = [&] { return Outcome{report::analysis(analysis_of(g, G))}; }; });

  auto* unfold = app.add_subcommand("unfold", "Miniversal unfolding F = f + sum t_k g_k");
  add_germ(unfold, g, false);
  unfold->callback([&] { action = [&] { return Outcome{report::unfolding(unfolding_of(g, G))}; }; });

  auto* identity = app.add_subcommand("verify-identity", "Check jac(p o nu) = (-1)^n h_z(F) exactly");
  add_germ(identity, g, false);
  identity->callback([&] {
    action = [&] {
      const auto j = verify_jacobian_identity(unfolding_of(g, G));
      return Outcome{report::identity(j), j.holds};
    };
  });

  auto* morse = app.add_subcommand("morse", "Certified critical points of F_t with indices");
  add_germ(morse, g);
  morse->add_option("--t", t_text, "Parameter values t1,t2,...")->required();
  morse->callback([&] {
    action = [&] {
      const auto u = unfolding_of(g, G);
      return Outcome{report::morse(morse_report(u, point_for(u, t_text), morse_of(g, G)))};
    };
  });

  auto* scan = app.add_subcommand("degree-scan", "Alternating critical point count over random parameters");
  add_germ(scan, g);
  scan->add_option("--samples", samples, "Accepted samples wanted")->capture_default_str();
  scan->add_option("--csv", csv_path, "Write accepted samples as CSV");
  scan->callback([&] {
    action = [&] {
      const auto u = unfolding_of(g, G);
      ScanOptions so;
      so.samples = samples;
      so.delta = delta_of(g);
      so.seed = G.seed;
      so.morse = morse_of(g, G);
      const auto rep = degree_invariance_scan(u, so);
      if (!csv_path.empty()) write_file(csv_path, report::scan_csv(rep, u.num_params(), u.n()));
      return Outcome{report::scan(rep), rep.sign_violations == 0};
    };
  });

  auto* euler = app.add_subcommand("euler-check", "Fiber counts above and below the critical values (n = 1)");
  add_germ(euler, g);
  euler->add_option("--t", t_text, "Parameter values; omit to sample");
  euler->add_option("--samples", samples, "Accepted samples when --t is omitted");
  euler->callback([&] {
    action = [&] {
      const auto u = unfolding_of(g, G);
      if (!t_text.empty()) {
        const auto rep = euler_fiber_check(u, point_for(u, t_text), morse_of(g, G));
        return Outcome{report::euler(rep), rep.holds};
      }
      const auto es = euler_scan(u, euler->count("--samples") ? samples : 20, delta_of(g), G.seed, morse_of(g, G));
      Json rows = Json::array();
      for (const auto& s : es.samples)
        rows.push_back(Json{{"draw", s.draw}, {"t", report::parameters(s.t)}, {"check", report::euler(s.report)}});
      return Outcome{Json{{"accepted", es.samples.size()}, {"draws", es.draws}, {"failures", es.failures},
                          {"holds", es.failures == 0}, {"samples", rows}},
                     es.failures == 0};
    };
  });

  auto* herman = app.add_subcommand("herman-probe", "Search for a parameter with no critical point in the box");
  add_germ(herman, g);
  herman->add_option("--budget", budget, "Parameter draws")->capture_default_str();
  herman->callback([&] {
    action = [&] {
      const auto w = herman_probe(unfolding_of(g, G), budget, delta_of(g), G.seed, morse_of(g, G));
      return Outcome{report::herman(w), w.has_value()};
    };
  });

  auto* disc = app.add_subcommand("discriminant", "Exact discriminant curve (n = 1) and optional slice figure");
  add_germ(disc, g);
  disc->add_option("--slice-svg", slice_svg_path, "Write a (lambda, t) slice figure");
  disc->add_option("--grid", grid, "Slice cells per side")->capture_default_str();
  disc->add_option("--axis", axis, "Varying parameter (0-based)")->capture_default_str();
  disc->add_option("--fixed", fixed_text, "Values of all parameters; the axis entry is ignored");
  disc->callback([&] {
    action = [&] {
      const auto u = unfolding_of(g, G);
      Json out;
      if (u.n() == 1) out["polynomial"] = exact_discriminant_1d(u, GroebnerOptions{G.budget}).poly.to_string();
      if (!slice_svg_path.empty()) {
        SlicePlane plane;
        plane.axis = axis;
        plane.fixed = fixed_text.empty() ? ParameterPoint{std::vector<Rational>(u.num_params(), Rational(0))}
                                         : point_for(u, fixed_text);
        const auto sg = slice_sample(u, plane, grid, morse_of(g, G));
        write_file(slice_svg_path, report::slice_svg(sg));
        out["slice"] = Json{{"grid", sg.grid}, {"exact", sg.exact}, {"svg", slice_svg_path}};
      }
      if (out.empty()) fail(ErrorKind::UnsupportedDimension, "exact discriminant needs n = 1; use --slice-svg");
      return Outcome{out};
    };
  });

  auto* cerf = app.add_subcommand("cerf", "Critical values along a parameter path with birth, death and crossing events");
  add_germ(cerf, g);
  cerf->add_option("--path", path_text, "Breakpoints \"t1,t2;t1,t2;...\"")->required();
  cerf->add_option("--steps", steps, "Path samples")->capture_default_str();
  cerf->add_option("--csv", csv_path, "Write sampled critical values as CSV");
  cerf->add_option("--svg", svg_path, "Write the Cerf diagram as SVG");
  cerf->callback([&] {
    action = [&] {
      const auto u = unfolding_of(g, G);
      CerfOptions co;
      co.delta = delta_of(g);
      co.morse = morse_of(g, G);
      ParameterPath path{path_points(path_text)};
      for (const auto& p : path.breakpoints)
        if (p.t.size() != u.num_params())
          fail(ErrorKind::VariableMismatch, "each path point needs " + std::to_string(u.num_params()) + " values");
      const auto tr = cerf_trace(u, path, steps, co);
      if (!csv_path.empty()) write_file(csv_path, report::cerf_csv(tr));
      if (!svg_path.empty()) write_file(svg_path, report::cerf_svg(tr));
      return Outcome{report::cerf(tr)};
    };
  });

  auto* maxwell = app.add_subcommand("maxwell", "Parameters where the absolute minimum is attained twice");
  add_germ(maxwell, g);
  maxwell->add_option("--samples", samples, "Parameter draws")->capture_default_str();
  maxwell->add_option("--segment", segment_text, "Search only the segment \"P;Q\"");
  maxwell->callback([&] {
    action = [&] {
      const auto u = unfolding_of(g, G);
      MaxwellOptions mo;
      mo.samples = samples;
      mo.delta = delta_of(g);
      mo.seed = G.seed;
      mo.morse = morse_of(g, G);
      std::vector<MaxwellPoint> found;
      if (!segment_text.empty()) {
        const auto pts = path_points(segment_text);
        if (pts.size() != 2) fail(ErrorKind::Parse, "segment needs exactly two points \"P;Q\"");
        if (auto p = maxwell_on_segment(u, pts[0], pts[1], mo)) found.push_back(*p);
      } else {
        found = maxwell_scan(u, mo);
      }
      return Outcome{Json{{"points", report::maxwell(found)}}};
    };
  });

  auto* level = app.add_subcommand("equal-level", "Parameters where all index-i critical values coincide");
  add_germ(level, g);
  level->add_option("--index", index, "Morse index")->capture_default_str();
  level->add_option("--budget", budget, "Random starts")->default_val(2000);
  level->callback([&] {
    action = [&] {
      EqualLevelOptions eo;
      eo.index = static_cast<int>(index);
      eo.budget = level->count("--budget") ? budget : 2000;
      eo.delta = delta_of(g);
      eo.seed = G.seed;
      eo.morse = morse_of(g, G);
      const auto r = equal_level_search(unfolding_of(g, G), eo);
      return Outcome{report::equal_level(r), r.has_value()};
    };
  });

  auto* semi = app.add_subcommand("semigroup", "Numerical semigroup of generators or of a plane branch");
  semi->add_option("generators", gens_text, "Generators, e.g. 4,6,13");
  semi->add_option("--branch", branch_text, "Branch \"x(t), y(t)\", e.g. \"t^4, t^6+t^7\"");
  semi->callback([&] {
    action = [&] {
      if (branch_text.empty() == gens_text.empty()) fail(ErrorKind::Precondition, "give either generators or --branch");
      if (gens_text.empty()) {
        const auto b = parse_branch(branch_text);
        const auto data = characteristic_data(b);
        Json out = report::semigroup(semigroup_from_generators(data.semigroup));
        out["characteristic_exponents"] = data.beta;
        return Outcome{out};
      }
      return Outcome{report::semigroup(semigroup_from_generators(integers(gens_text)))};
    };
  });

  auto* ideal = app.add_subcommand("toric-ideal", "Binomial generators of the monomial curve ideal");
  ideal->add_option("generators", gens_text, "Semigroup generators, e.g. 4,6,13")->required();
  ideal->callback([&] {
    action = [&] { return Outcome{report::toric(toric_ideal(semigroup_from_generators(integers(gens_text)), GroebnerOptions{G.budget}))}; };
  });

  auto* resolve = app.add_subcommand("toric-resolve", "Unimodular fan with the semigroup generator vector as a ray");
  resolve->add_option("generators", gens_text, "Semigroup generators, e.g. 4,6,13")->required();
  resolve->add_option("--json,--cert", cert_path, "Write the certificate JSON to a file");
  resolve->callback([&] {
    action = [&] {
      const auto cert = resolve_monomial_curve(semigroup_from_generators(integers(gens_text)));
      const Json j = report::certificate(cert);
      if (!cert_path.empty()) write_file(cert_path, j.dump(2) + "\n");
      return Outcome{j};
    };
  });

  auto* over = app.add_subcommand("overweight", "Weights and initial forms of deformed binomials");
  over->add_option("--weights", weights_text, "Weights of U0..Ug")->required();
  over->add_option("--series", series_texts, "Series in U0..Ug (repeatable)")->required();
  over->add_option("--expected", expected_texts, "Expected initial binomial per series; default: toric ideal generators");
  over->callback([&] {
    action = [&] {
      const auto w = integers(weights_text);
      const RingPtr ring = toric_ring(w.size());
      std::vector<Polynomial> series;
      for (const auto& s : series_texts) series.push_back(parse_polynomial(s, ring));
      std::vector<OverweightVerdict> v;
      if (expected_texts.empty()) {
        v = overweight_against_ideal(toric_ideal(semigroup_from_generators(w), GroebnerOptions{G.budget}), series);
      } else {
        std::vector<Polynomial> expected;
        for (const auto& s : expected_texts) expected.push_back(parse_polynomial(s, ring));
        v = overweight_check(w, series, expected);
      }
      const bool ok = std::all_of(v.begin(), v.end(), [](const auto& x) { return x.pass; });
      return Outcome{Json{{"weights", w}, {"verdicts", report::overweight(v)}}, ok};
    };
  });

  auto* run = app.add_subcommand("run", "Execute an experiment manifest");
  run->add_option("manifest", manifest_path, "Manifest JSON file")->required();
  run->add_option("--out-dir", out_dir, "Base directory for relative output paths")->capture_default_str();
  run->callback([&] {
    action = [&] {
      Manifest m = load_manifest(manifest_path);
      if (G.seed_given) m.seed = G.seed;
      m.budget = std::min(m.budget, G.budget);
      const auto r = run_manifest(m);
      write_outputs(r, m, out_dir);
      std::ostringstream text;
      text << "manifest: " << m.name << "\nseed: " << m.seed << "\nstages:";
      for (const auto& [name, body] : r.report["stages"].items()) text << ' ' << name;
      text << '\n';
      for (const auto& a : r.assertions)
        text << (a.pass ? "PASS " : "FAIL ") << a.assertion.path << ' ' << a.assertion.op << ' '
             << a.assertion.value.dump() << " (actual " << a.actual.dump() << ")\n";
      for (const auto& [path, contents] : r.files) text << "wrote " << path << '\n';
      text << "pass: " << (r.pass ? "true" : "false") << '\n';
      return Outcome{r.report, r.pass, text.str()};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error(error_object("UsageError", e.what()), G);
  }
  G.seed_given = app.count("--seed") > 0;

  try {
    G.budget = env_budget();
    const Outcome out = action();
    if (!G.quiet) {
      if (G.json) std::cout << out.body.dump(2) << '\n';
      else if (!out.text.empty()) std::cout << out.text;
      else print_text(out.body, "", std::cout);
    }
    return out.ok ? 0 : 1;
  } catch (const ManifestError& e) {
    Json err = error_object(std::string(to_string(e.kind())), e.what());
    err["field"] = e.field();
    err["line"] = e.line();
    return emit_error(err, G);
  } catch (const Error& e) {
    return emit_error(error_object(std::string(to_string(e.kind())), e.what()), G);
  } catch (const std::exception& e) {
    return emit_error(error_object("InternalError", e.what()), G);
  }
}
