#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

const std::string cli = LINDEP_CLI;
const std::string samples = LINDEP_SAMPLES;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string out_path = ::testing::TempDir() + "lindep_cli_out.txt";
  const std::string cmd = "'" + cli + "' " + args + " > '" + out_path + "' 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, PassingSuiteExitsZero) { EXPECT_EQ(run("suite affine-chi").code, 0); }

TEST(Cli, SuiteList) {
  const auto r = run("suite --list");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("torsion-free"), std::string::npos);
}

TEST(Cli, VerifyGoodAndBrokenCertificates) {
  EXPECT_EQ(run("verify '" + samples + "/affine_chi.cert' '" + samples + "/pi_plus_chihat.cert'").code, 0);
  EXPECT_EQ(run("verify '" + samples + "/broken.cert'").code, 1);
}

TEST(Cli, ProbeVerdicts) {
  EXPECT_EQ(run("probe '" + samples + "/gabor.probe'").code, 0);
}

TEST(Cli, UsageAndParseErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("suite no-such-suite").code, 2);
  EXPECT_EQ(run("--set grid.points=abc suite affine-chi").code, 2);
  EXPECT_EQ(run("gring lattice --r 1 --point 'sqrt(2);0'").code, 2);
  const std::string bad = ::testing::TempDir() + "lindep_bad.cert";
  std::ofstream(bad) << "rep = pi-affine\nterm = 1 *\n";
  const auto r = run("verify '" + bad + "'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 2"), std::string::npos);
}

TEST(Cli, NonConvergentAdmissibilityIsInconclusive) {
  EXPECT_EQ(run("admissibility --rep pi-affine --u gauss").code, 3);
  EXPECT_EQ(run("admissibility --rep pi-affine --u dgauss").code, 0);
}

TEST(Cli, TorsionPrintsWitness) {
  const auto r = run("gring torsion --m 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("cyc(1, 3)"), std::string::npos);
}

TEST(Cli, ConfigFileAndEnvironment) {
  const std::string ini = ::testing::TempDir() + "lindep_bad.ini";
  std::ofstream(ini) << "[grid]\nwidth = 3\n";
  EXPECT_EQ(run("-c '" + ini + "' suite affine-chi").code, 2);
  EXPECT_EQ(run("-c '" + samples + "/default.ini' suite affine-chi").code, 0);
  EXPECT_EQ(run("suite affine-chi").code, 0);
  const std::string env_cmd = "LINDEP_CONFIG='" + ini + "' '" + cli + "' suite affine-chi > /dev/null 2>&1";
  const int status = std::system(env_cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}

TEST(Cli, CoefficientCsv) {
  const auto r = run("coefficient --rep pi-affine --v chi --u dgauss --rule '0 1 8 6 0.5' "
                     "--axis 'mult 0.5 2 2 1 midpoint' --axis 'add -1 1 2 1 midpoint'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("a,b,abs_F", 0), 0u);
}

TEST(Cli, JsonlOutputIsDeterministic) {
  const std::string a = ::testing::TempDir() + "lindep_a.jsonl", b = ::testing::TempDir() + "lindep_b.jsonl";
  EXPECT_EQ(run("-q --jsonl '" + a + "' suite refinement").code, 0);
  EXPECT_EQ(run("suite refinement -q --jsonl '" + b + "'").code, 0);
  const auto sa = slurp(a);
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, slurp(b));
  EXPECT_NE(sa.find("\"summary\""), std::string::npos);
}

TEST(Cli, AllSuitesPass) {
  const auto r = run("-q suite all");
  EXPECT_EQ(r.code, 0) << r.out;
}
