#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "singlab/manifest.hpp"

using namespace singlab;

namespace {

const char* kA2 = R"({
  "schema": "singlab.manifest/1",
  "name": "a2",
  "germ": "x^3",
  "seed": 11,
  "samples": 40,
  "stages": ["analyze", "verify-identity", "degree-scan", "discriminant", "cerf", "slice"],
  "cerf": {"path": [["-1"], ["1"]], "steps": 40},
  "slice": {"grid": 12},
  "assertions": [
    {"path": "stages.analyze.mu", "equals": 2},
    {"path": "stages.degree-scan.accepted", "at_least": 40},
    {"path": "stages.cerf.events.0.witness", "abs_below": 1e-6},
    {"path": "stages.discriminant.polynomial", "contains": "27*lambda^2"}
  ],
  "outputs": {"report": "out/report.json", "scan_csv": "scan.csv", "cerf_csv": "cerf.csv",
              "cerf_svg": "cerf.svg", "slice_svg": "slice.svg"}
})";

const char* kBranch = R"({
  "schema": "singlab.manifest/1",
  "name": "branch",
  "stages": ["semigroup", "toric-ideal", "toric-resolve", "strict-transform", "overweight"],
  "semitoric": {"branch": "t^4, t^6 + t^7", "overweight": {"series": ["U1^2 - U0^3", "U0*U1 + U2"]}},
  "outputs": {"certificate": "cert.json"}
})";

ManifestError schema_error(const std::string& text) {
  try {
    parse_manifest(text);
  } catch (const ManifestError& e) {
    return e;
  }
  ADD_FAILURE() << "no schema error for: " << text;
  return ManifestError("", 0, "");
}

std::string with(const std::string& base, const std::string& from, const std::string& to) {
  std::string s = base;
  const auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return s.replace(pos, from.size(), to);
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Manifest, ParsesDefaultsAndSections) {
  const auto m = parse_manifest(kA2);
  EXPECT_EQ(m.name, "a2");
  EXPECT_EQ(m.seed, 11u);
  EXPECT_EQ(m.samples, 40u);
  EXPECT_EQ(m.box_radius, Rational(4));
  EXPECT_EQ(m.cerf_path.size(), 2u);
  EXPECT_EQ(m.cerf_steps, 40u);
  EXPECT_EQ(m.slice_grid, 12u);
  EXPECT_EQ(m.assertions.size(), 4u);
  EXPECT_EQ(m.assertions[2].op, "abs_below");
  EXPECT_EQ(m.outputs.report, "out/report.json");
}

TEST(Manifest, NegativeRadiusNamesFieldAndLine) {
  const std::string text = with(kA2, R"("seed": 11,)", "\"seed\": 11,\n  \"box_radius\": \"-2\",");
  const auto e = schema_error(text);
  EXPECT_EQ(e.kind(), ErrorKind::Schema);
  EXPECT_EQ(e.field(), "box_radius");
  EXPECT_EQ(e.line(), 6);
  EXPECT_NE(std::string(e.what()).find("positive"), std::string::npos);
}

TEST(Manifest, RejectsUnknownAndMalformed) {
  auto e = schema_error(with(kA2, R"("slice": {"grid": 12})", R"("slice": {"grid": 12, "colour": 1})"));
  EXPECT_EQ(e.field(), "slice.colour");
  EXPECT_EQ(e.line(), 9);

  e = schema_error(with(kA2, R"("name": "a2",)", R"("name": "a2", "extra": true,)"));
  EXPECT_EQ(e.field(), "extra");

  e = schema_error(with(kA2, R"("seed": 11,)", R"("seed": 11,,)"));
  EXPECT_EQ(e.field(), "");
  EXPECT_EQ(e.line(), 5);

  e = schema_error(with(kA2, "singlab.manifest/1", "singlab.manifest/9"));
  EXPECT_EQ(e.field(), "schema");

  e = schema_error(with(kA2, R"("samples": 40)", R"("samples": 0)"));
  EXPECT_EQ(e.field(), "samples");

  e = schema_error(with(kA2, R"("stages": ["analyze",)", R"("stages": ["analyse",)"));
  EXPECT_EQ(e.field(), "stages");

  e = schema_error(with(kA2, R"("germ": "x^3",)", ""));
  EXPECT_EQ(e.field(), "germ");

  e = schema_error(with(kA2, R"({"path": "stages.analyze.mu", "equals": 2})",
                        R"({"path": "stages.analyze.mu", "equals": 2, "at_most": 3})"));
  EXPECT_EQ(e.field(), "assertions.at_most");

  e = schema_error(with(kBranch, R"("branch": "t^4, t^6 + t^7", )", ""));
  EXPECT_EQ(e.field(), "semitoric");
}

TEST(Manifest, A2PipelineReport) {
  const auto run = run_manifest(parse_manifest(kA2));
  EXPECT_TRUE(run.pass);
  const auto& st = run.report["stages"];
  EXPECT_EQ(run.report["schema"], kReportSchema);
  EXPECT_EQ(st["analyze"]["mu"], 2);
  EXPECT_EQ(st["verify-identity"]["holds"], true);
  EXPECT_EQ(st["degree-scan"]["alt_sum"], 0);
  EXPECT_EQ(st["degree-scan"]["sign_violations"], 0);
  EXPECT_EQ(st["discriminant"]["polynomial"], "4*t1^3 + 27*lambda^2");
  ASSERT_EQ(st["cerf"]["events"].size(), 1u);
  EXPECT_EQ(st["cerf"]["events"][0]["kind"], "death");
  EXPECT_FALSE(st.contains("morse"));
  for (const auto& a : run.report["assertions"]) EXPECT_TRUE(a["pass"].get<bool>()) << a.dump();

  std::map<std::string, std::string> files(run.files.begin(), run.files.end());
  ASSERT_EQ(files.size(), 5u);
  EXPECT_EQ(files["out/report.json"], run.report.dump(2) + "\n");

  const std::string& csv = files["scan.csv"];
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "draw,t1,N0,N1,alt_sum");
  EXPECT_EQ(count(csv, "\n"), 41u);
  std::istringstream rows(csv);
  std::string row;
  std::getline(rows, row);
  while (std::getline(rows, row)) {
    // x^3 + t1 x has two critical points when t1 < 0 and none otherwise.
    std::vector<std::string> f;
    std::stringstream ss(row);
    for (std::string c; std::getline(ss, c, ',');) f.push_back(c);
    ASSERT_EQ(f.size(), 5u) << row;
    const bool negative = f[1][0] == '-';
    EXPECT_EQ(f[2], negative ? "1" : "0") << row;
    EXPECT_EQ(f[3], negative ? "1" : "0") << row;
    EXPECT_EQ(f[4], "0") << row;
  }

  const std::string& svg = files["cerf.svg"];
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(count(svg, "<circle"), 1u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(count(files["slice.svg"], "<rect"), 144u);
  // Steps 0..19 have t1 < 0 and two points each, step 20 is degenerate, the rest are empty.
  EXPECT_EQ(count(files["cerf.csv"], "\n"), 1u + 20u * 2u + 1u);
}

TEST(Manifest, FailedAssertionsReportActualValues) {
  const std::string text = with(kA2, R"({"path": "stages.analyze.mu", "equals": 2})",
                                R"({"path": "stages.analyze.mu", "equals": 3}, {"path": "stages.nope", "equals": 1})");
  const auto run = run_manifest(parse_manifest(text));
  EXPECT_FALSE(run.pass);
  EXPECT_EQ(run.report["pass"], false);
  EXPECT_EQ(run.report["assertions"][0]["actual"], 2);
  EXPECT_EQ(run.report["assertions"][0]["pass"], false);
  EXPECT_TRUE(run.report["assertions"][1]["actual"].is_null());
  EXPECT_EQ(run.report["assertions"][2]["pass"], true);
}

TEST(Manifest, BranchPipelineReport) {
  const auto run = run_manifest(parse_manifest(kBranch));
  const auto& st = run.report["stages"];
  EXPECT_EQ(st["semigroup"]["generators"], Json::array({4, 6, 13}));
  EXPECT_EQ(st["semigroup"]["conductor"], 16);
  EXPECT_EQ(st["toric-ideal"]["weights"], Json::array({4, 6, 13}));
  EXPECT_GE(st["toric-ideal"]["binomials"].size(), 2u);
  const auto& cones = st["toric-resolve"]["cones"];
  const auto chart = st["toric-resolve"]["chart"].get<std::size_t>();
  ASSERT_LT(chart, cones.size());
  EXPECT_EQ(cones[chart].size(), 3u);
  EXPECT_EQ(std::count(cones[chart].begin(), cones[chart].end(), Json::array({4, 6, 13})), 1);
  EXPECT_EQ(st["toric-resolve"]["a"], Json::array({0, 0, 1}));
  EXPECT_EQ(st["strict-transform"]["pass"], true);
  EXPECT_EQ(st["strict-transform"]["branch"]["orders"], st["toric-resolve"]["a"]);
  EXPECT_EQ(st["strict-transform"]["monomial_curve"]["leading_units"], Json::array({"1", "1", "1"}));
  EXPECT_EQ(st["overweight"]["verdicts"][0]["verdict"], "PASS");
  EXPECT_EQ(st["overweight"]["verdicts"][0]["weight"], 12);
  EXPECT_EQ(st["overweight"]["verdicts"][1]["verdict"], "FAIL");
  ASSERT_EQ(run.files.size(), 1u);
  EXPECT_EQ(Json::parse(run.files[0].second), st["toric-resolve"]);
}

TEST(Manifest, RerunIsByteIdentical) {
  const auto m = parse_manifest(kA2);
  const auto a = run_manifest(m), b = run_manifest(m);
  ASSERT_EQ(a.files.size(), b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    EXPECT_EQ(a.files[i].first, b.files[i].first);
    EXPECT_EQ(a.files[i].second, b.files[i].second) << a.files[i].first;
  }

  auto other = m;
  other.seed = 12;
  EXPECT_NE(run_manifest(other).files[1].second, a.files[1].second);
}

TEST(Manifest, WritesOutputsUnderBase) {
  const auto dir = std::filesystem::temp_directory_path() / "singlab_manifest_test";
  std::filesystem::remove_all(dir);
  auto m = parse_manifest(kBranch);
  m.outputs.log = "logs/run.log";
  const auto run = run_manifest(m);
  write_outputs(run, m, dir);
  std::ifstream cert(dir / "cert.json");
  std::stringstream ss;
  ss << cert.rdbuf();
  EXPECT_EQ(ss.str(), run.files[0].second);
  std::ifstream log(dir / "logs" / "run.log");
  std::string first;
  std::getline(log, first);
  EXPECT_EQ(first.rfind("started ", 0), 0u);
  std::string line;
  std::size_t stages = 0;
  const std::regex timing(R"([a-z-]+ [0-9.e+-]+ ms)");
  while (std::getline(log, line)) stages += std::regex_match(line, timing) ? 1 : 0;
  EXPECT_EQ(stages, 5u);
  std::filesystem::remove_all(dir);
}
