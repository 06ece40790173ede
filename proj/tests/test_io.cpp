#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "lindep/config.hpp"
#include "lindep/literals.hpp"
#include "lindep/report.hpp"
#include "lindep/suites.hpp"

using namespace lindep;

namespace {

std::size_t line_of(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_certificate(in);
  } catch (const parse_error& e) {
    return e.line();
  }
  return 0;
}

const char* kChiCert =
    "space = hpi\n"
    "rep = pi-affine\n"
    "target = chi\n"
    "grid = -1 2 1024\n"
    "term = 1 * affine(1, 0)\n"
    "term = -2^(-1/2) * affine(1/2, 0)\n"
    "term = -2^(-1/2) * affine(1/2, 1/2)\n";

}  // namespace

TEST(Scalars, Expressions) {
  EXPECT_NEAR(std::abs(parse_scalar("-2^(-1/2)") + std::sqrt(0.5)), 0.0, 1e-16);
  EXPECT_EQ(parse_scalar("3"), Complex(3.0));
  EXPECT_NEAR(std::abs(parse_scalar("1/4") - 0.25), 0.0, 0.0);
  EXPECT_THROW(parse_scalar("2^"), parse_error);
  EXPECT_THROW(parse_real("1 + "), parse_error);
}

TEST(Elements, RoundTripThroughText) {
  for (const char* text : {"affine(2, -0.5)", "shear(4, 0.5, 1, -2)", "wh(0.25, 1, -1)", "zn(1, -2)", "cyc(2, 5)",
                           "heis(1/4; 1/2; 0)"}) {
    const auto g = parse_element(text);
    EXPECT_TRUE(same_element(parse_element(format_element(g)), g, 0.0)) << text;
  }
}

TEST(Elements, Rejections) {
  EXPECT_THROW(parse_element("heis(sqrt(2); 0; 0)"), parse_error);
  EXPECT_THROW(parse_element("zn(1/2)"), parse_error);
  EXPECT_THROW(parse_element("affine(1)"), parse_error);
  EXPECT_THROW(parse_element("affine(0, 1)"), parse_error);
  EXPECT_THROW(parse_element("torus(1)"), parse_error);
}

TEST(Certificates, ParseAndVerify) {
  std::istringstream in(kChiCert);
  const auto doc = parse_certificate(in);
  EXPECT_EQ(doc.certificate.terms.size(), 3u);
  EXPECT_EQ(doc.tolerance, 1e-10);
  EXPECT_EQ(verify(doc.certificate), 0.0);
}

TEST(Certificates, ErrorsCarryLineNumbers) {
  EXPECT_EQ(line_of(std::string(kChiCert) + "bogus = 1\n"), 8u);
  EXPECT_EQ(line_of("# comment\nspace = hpi\nrep = pi-nothing\n"), 3u);
  EXPECT_EQ(line_of("space = hpi\nno equals sign\n"), 2u);
  EXPECT_EQ(line_of("rep = pi-affine\nterm = 1 * torus(3)\n"), 2u);
  std::istringstream missing("rep = pi-affine\ntarget = chi\nterm = 1 * affine(1, 0)\n");
  EXPECT_THROW(parse_certificate(missing), parse_error);
  std::istringstream no_terms("rep = pi-affine\ntarget = chi\ngrid = 0 1 4\n");
  EXPECT_THROW(parse_certificate(no_terms), parse_error);
}

TEST(Probes, ParseAndBounds) {
  std::istringstream in(
      "rep = schroedinger\ntarget = ngauss\ngrid = -8 8 256\nelement = wh(0, 0, 0)\nelement = wh(0, 0.5, 0)\n");
  const auto doc = parse_probe(in);
  EXPECT_EQ(doc.elements.size(), 2u);
  EXPECT_EQ(probe_independence(doc.space, doc.elements).verdict, Verdict::Independent);
  std::istringstream bad("rep = schroedinger\ntarget = ngauss\ngrid = -8 8 256\nelement = wh(0, 0, 0)\n"
                         "threshold = 1e-12\nfloor = 1e-8\n");
  EXPECT_THROW(parse_probe(bad), parse_error);
}

TEST(Samples, EveryShippedFileParses) {
  const std::string dir = LINDEP_SAMPLES;
  for (const char* f : {"affine_chi.cert", "pi_plus_chihat.cert", "affine_l2g.cert", "broken.cert"})
    EXPECT_NO_THROW(load_certificate(dir + "/" + f)) << f;
  for (const char* f : {"shearlet.probe", "gabor.probe", "z_translates.probe"})
    EXPECT_NO_THROW(load_probe(dir + "/" + f)) << f;
  EXPECT_NO_THROW(RunConfig::load(dir + "/default.ini"));
}

TEST(ExactSums, ParseCoefficientsAndGroups) {
  std::istringstream in("1 * cyc(0, 3)\n-1/2, 2 * cyc(1, 3)\n");
  const auto s = parse_exact_sum<CyclicElement>(in);
  EXPECT_EQ(s.coefficient(CyclicElement(1, 3)), GaussianRational(Rational(-1, 2), Rational(2)));
  std::istringstream wrong("1 * cyc(0, 3)\n1 * zn(1)\n");
  try {
    parse_exact_sum<CyclicElement>(wrong);
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Config, DefaultsOverridesAndErrors) {
  std::istringstream in("[grid]\npoints = 2048\n[tolerance]\nthreshold = 1e-6\n");
  auto cfg = RunConfig::from_stream(in);
  EXPECT_EQ(cfg.grid_points, 2048u);
  EXPECT_EQ(cfg.probe.threshold, 1e-6);
  EXPECT_EQ(cfg.grid_lower, -8.0);
  cfg.apply_override("haar.a_panels=12");
  EXPECT_EQ(cfg.calderon.a_panels, 12u);
  EXPECT_THROW(cfg.apply_override("haar.a_panels"), config_error);
  EXPECT_THROW(cfg.apply_override("nope.key=1"), config_error);
  EXPECT_THROW(cfg.apply_override("grid.points=1.5"), config_error);
  EXPECT_THROW(cfg.apply_override("grid.lower=abc"), config_error);
  std::istringstream unknown("[grid]\nwidth = 3\n");
  EXPECT_THROW(RunConfig::from_stream(unknown), config_error);
  std::istringstream inverted("[tolerance]\nfloor = 1e-4\n");
  EXPECT_THROW(RunConfig::from_stream(inverted), config_error);
}

TEST(Config, EnvironmentVariableIsUsedWithoutAPath) {
  const std::string path = ::testing::TempDir() + "lindep_env.ini";
  std::ofstream(path) << "[run]\nseed = 42\n";
  ::setenv("LINDEP_CONFIG", path.c_str(), 1);
  EXPECT_EQ(RunConfig::resolve(std::nullopt).seed, 42u);
  EXPECT_THROW(RunConfig::resolve(std::string("/nonexistent/x.ini")), config_error);
  ::unsetenv("LINDEP_CONFIG");
  EXPECT_EQ(RunConfig::resolve(std::nullopt).seed, RunConfig{}.seed);
}

TEST(Report, ExitCodesAndSummary) {
  Report r;
  EXPECT_EQ(r.exit_code(), 0);
  r.add(Record{"b", "x", Status::Pass});
  r.add(Record{"a", "y", Status::Inconclusive});
  EXPECT_EQ(r.exit_code(), 3);
  r.add(Record{"a", "x", Status::Fail});
  EXPECT_EQ(r.exit_code(), 1);
  r.sort();
  EXPECT_EQ(r.records().front().check, "x");
  EXPECT_EQ(r.records().front().suite, "a");
  std::ostringstream os;
  r.write_jsonl(os);
  std::istringstream lines(os.str());
  std::string line, last;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    ++n;
    last = line;
  }
  EXPECT_EQ(n, 4u);
  const auto summary = nlohmann::json::parse(last)["summary"];
  EXPECT_EQ(summary["pass"], 1);
  EXPECT_EQ(summary["fail"], 1);
  EXPECT_EQ(summary["inconclusive"], 1);
}

TEST(Suites, RunsAreDeterministic) {
  const RunConfig cfg;
  std::ostringstream a, b;
  suites::run("affine-chi", cfg).write_jsonl(a);
  suites::run("affine-chi", cfg).write_jsonl(b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(suites::run("affine-chi", cfg).exit_code(), 0);
  EXPECT_THROW(suites::run("no-such-suite", cfg), std::invalid_argument);
}
