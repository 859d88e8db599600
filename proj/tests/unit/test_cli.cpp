#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "varberg/cli.hpp"
#include "varberg/report.hpp"

using namespace varberg;
namespace fs = std::filesystem;

namespace {

class CliRun : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("varberg-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string scenario(const std::string& name, const std::string& text) {
    fs::path p = dir_ / (name + ".json");
    std::ofstream(p) << text;
    return p.string();
  }

  int run(const std::string& sub, const std::string& file, const std::string& out, RunOptions extra = {}) {
    extra.subcommand = sub;
    extra.scenario = file;
    extra.out = out;
    std::ostringstream o, e;
    int code = run_scenario(extra, o, e);
    stdout_ = o.str();
    stderr_ = e.str();
    return code;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::string stdout_, stderr_;
};

const char* kNorm = R"({
  "name": "small",
  "functions": {"z": {"type": "coord", "index": 0}},
  "measures": {"dV": {"type": "lebesgue", "radial": 60, "angular": 64}},
  "lattice": {"rho_max": 0.99},
  "tasks": [
    {"kind": "norm", "name": "z", "function": "z", "measure": "dV", "expect": {"norm": {"approx": 0.7071067811865476, "rel": 1e-6}}},
    {"kind": "carleson", "name": "dv", "measure": "dV", "expect": {"divergence_flag": false}}
  ]
})";

}  // namespace

TEST_F(CliRun, PassingScenarioWritesReports) {
  std::string file = scenario("small", kNorm);
  std::string out = (dir_ / "out").string();
  ASSERT_EQ(run("verify", file, out), 0) << stderr_;
  EXPECT_NE(stdout_.find("PASS norm z"), std::string::npos) << stdout_;
  EXPECT_NE(stdout_.find("all assertions hold"), std::string::npos);
  ASSERT_TRUE(fs::exists(fs::path(out) / "small-verify.json"));
  EXPECT_TRUE(fs::exists(fs::path(out) / "small-dv-shells.csv"));
  Json report = Json::parse(slurp(fs::path(out) / "small-verify.json"));
  EXPECT_EQ(report["pass"], true);
  EXPECT_EQ(report["tasks"].size(), 2u);
  EXPECT_EQ(report["tasks"][0]["assertions"][0]["key"], "norm");
}

TEST_F(CliRun, SubcommandSelectsTasks) {
  std::string file = scenario("small", kNorm);
  ASSERT_EQ(run("norm", file, dir_.string()), 0) << stderr_;
  Json report = Json::parse(slurp(dir_ / "small-norm.json"));
  EXPECT_EQ(report["tasks"].size(), 1u);
  EXPECT_EQ(run("toeplitz", file, dir_.string()), 1);
  EXPECT_NE(stderr_.find("no 'toeplitz' tasks"), std::string::npos) << stderr_;
}

TEST_F(CliRun, FailedExpectationExitsTwo) {
  std::string file = scenario("bad", R"({
    "name": "bad",
    "functions": {"z": {"type": "coord", "index": 0}},
    "measures": {"dV": {"type": "lebesgue", "radial": 40, "angular": 32}},
    "tasks": [{"kind": "norm", "function": "z", "measure": "dV", "expect": {"norm": {"min": 0.9}}}]
  })");
  EXPECT_EQ(run("norm", file, dir_.string()), 2);
  EXPECT_NE(stdout_.find("FAIL norm norm-0"), std::string::npos) << stdout_;
  Json report = Json::parse(slurp(dir_ / "bad-norm.json"));
  EXPECT_EQ(report["pass"], false);
}

TEST_F(CliRun, InputErrorsExitOne) {
  EXPECT_EQ(run("norm", (dir_ / "missing.json").string(), dir_.string()), 1);
  std::string file = scenario("ref", R"({
    "measures": {"dV": {"type": "lebesgue", "radial": 40, "angular": 32}},
    "tasks": [{"kind": "norm", "function": "nothing", "measure": "dV"}]
  })");
  EXPECT_EQ(run("norm", file, dir_.string()), 1);
  EXPECT_NE(stderr_.find("unresolved reference: function 'nothing'"), std::string::npos) << stderr_;
  std::string meas = scenario("meas", R"({
    "tasks": [{"kind": "norm", "function": 1, "measure": "nowhere"}]
  })");
  EXPECT_EQ(run("norm", meas, dir_.string()), 1);
  EXPECT_NE(stderr_.find("unresolved reference: measure 'nowhere'"), std::string::npos) << stderr_;
  std::string expect = scenario("expect", R"({
    "measures": {"dV": {"type": "lebesgue", "radial": 40, "angular": 32}},
    "tasks": [{"kind": "norm", "function": 1, "measure": "dV", "expect": {"no.such.key": 1}}]
  })");
  EXPECT_EQ(run("norm", expect, dir_.string()), 1);
}

TEST_F(CliRun, RunsAreByteIdentical) {
  std::string file = scenario("small", kNorm);
  ASSERT_EQ(run("verify", file, (dir_ / "a").string()), 0) << stderr_;
  ASSERT_EQ(run("verify", file, (dir_ / "b").string()), 0) << stderr_;
  for (const char* f : {"small-verify.json", "small-dv-shells.csv"})
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
}

TEST_F(CliRun, OverridesAreRecorded) {
  std::string file = scenario("small", kNorm);
  RunOptions o;
  o.seed = 11;
  o.resolution = std::make_pair(60, 64);
  ASSERT_EQ(run("norm", file, dir_.string(), o), 0) << stderr_;
  Json report = Json::parse(slurp(dir_ / "small-norm.json"));
  EXPECT_EQ(report["seed"], 11);
  EXPECT_EQ(report["overrides"]["resolution"][0], 60);
}

TEST_F(CliRun, BinaryRejectsMalformedOptions) {
  std::string file = scenario("small", kNorm);
  std::string base = std::string(VARBERG_CLI_PATH) + " norm --scenario " + file + " --out " + dir_.string();
  auto code = [](const std::string& cmd) {
    int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  EXPECT_EQ(code(base), 0);
  EXPECT_EQ(code(base + " --resolution 400by512"), 1);
  EXPECT_EQ(code(base + " --resolution 0x5"), 1);
  EXPECT_EQ(code(base + " --rho-max 1.5"), 1);
  EXPECT_EQ(code(base + " --simd neon"), 1);
  EXPECT_EQ(code(base + " --simd scalar"), 0);
  EXPECT_EQ(code(std::string(VARBERG_CLI_PATH) + " norm"), 1);
  EXPECT_EQ(code(std::string(VARBERG_CLI_PATH) + " frobnicate --scenario " + file), 1);
}
