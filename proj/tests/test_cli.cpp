// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "lmlab/lmlab.hpp"

using namespace lmlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const char* bin = std::getenv("LMLAB_BIN");
  std::string cmd = env + " " + std::string(bin ? bin : "lmlab") + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

fs::path tmp(const std::string& name) { return fs::temp_directory_path() / ("lmlab_cli_" + name); }

}  // namespace

TEST(Cli, GridBelowFiveIsConfigError) {
  auto r = run("suite --grid 4:1");
  EXPECT_EQ(r.code, 64);
  EXPECT_NE(r.out.find("d >= 5 required"), std::string::npos) << r.out;
}

TEST(Cli, MalformedInputsAreConfigErrors) {
  EXPECT_EQ(run("suite --grid 5-1").code, 64);
  EXPECT_EQ(run("suite --checks nosuch").code, 64);
  EXPECT_EQ(run("verify za1 --d 5 --delta 3").code, 64);
  EXPECT_EQ(run("suite --mode fast").code, 64);
  EXPECT_EQ(run("").code, 64);
}

TEST(Cli, LatticePrintsNormalForm) {
  auto r = run("lattice --d 5 --delta 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Delta = {3}"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("Q1 = x_2*x_4 + x_1*x_5"), std::string::npos) << r.out;
}

TEST(Cli, BuildDTIsOneGeneratorAndRoundTrips) {
  auto path = tmp("dt51.ideal");
  ASSERT_EQ(run("build --d 5 --delta 1 --object dt --out " + path.string()).code, 0);
  auto I = import_ideal(read_file(path.string()));
  EXPECT_EQ(I.size(), 1u);
  EXPECT_EQ(export_ideal(I), read_file(path.string()));
  EXPECT_TRUE(ideal_equal(I, build_DT_ideal(normal_form(5, 1)).ideal));
}

TEST(Cli, GbOfExportedChart) {
  auto in = tmp("u62.ideal"), out = tmp("u62.gb");
  ASSERT_EQ(run("build --d 6 --delta 2 --object u --out " + in.string()).code, 0);
  ASSERT_EQ(run("gb " + in.string() + " --out " + out.string()).code, 0);
  auto I = import_ideal(read_file(in.string())), G = import_ideal(read_file(out.string()));
  EXPECT_TRUE(ideal_equal(I, G));
}

TEST(Cli, UnknownOrderIsRejected) {
  auto path = tmp("bad.ideal");
  ASSERT_EQ(run("build --d 5 --delta 1 --object dt --out " + path.string()).code, 0);
  std::string text = read_file(path.string());
  auto k = text.find("grevlex");
  ASSERT_NE(k, std::string::npos);
  text.replace(k, 7, "weird");
  write_file(path.string(), text);
  auto r = run("gb " + path.string());
  EXPECT_EQ(r.code, 64);
  EXPECT_NE(r.out.find("weird"), std::string::npos) << r.out;
}

TEST(Cli, VerifyWritesJson) {
  auto path = tmp("za1.json");
  auto r = run("verify za1 --d 5 --delta 1 --json " + path.string());
  EXPECT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(read_file(path.string()));
  EXPECT_EQ(j["version"], "1");
  EXPECT_EQ(j["reports"][0]["check"], "za1");
  EXPECT_EQ(j["reports"][0]["status"], "pass");
  EXPECT_EQ(j["summary"]["pass"], 1);
}

TEST(Cli, BlowupAliasAndPivot) {
  auto r = run("verify blowup --d 6 --delta 2 --pivot 3,1");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("chart-match (6,2) pivot 3,1"), std::string::npos) << r.out;
  EXPECT_EQ(run("verify blowup --d 6 --delta 2 --pivot 1,1").code, 64);
}

TEST(Cli, SuiteIsDeterministicAcrossJobs) {
  auto a = tmp("s1.json"), b = tmp("s2.json");
  std::string base = "suite --grid 5:1,5:2,6:2 --checks all --mode sound --seed 7 --no-timing --json ";
  EXPECT_EQ(run(base + a.string()).code, 0);
  EXPECT_EQ(run(base + b.string() + " --jobs 3").code, 0);
  EXPECT_EQ(read_file(a.string()), read_file(b.string()));
}

TEST(Cli, FailingCheckExitsOne) {
  // case (2) linking identities are reported as failures
  EXPECT_EQ(run("verify affine-chart --d 6 --delta 1 --pivot 3,1").code, 1);
}

TEST(Cli, TimeoutSettings) {
  EXPECT_EQ(run("verify za1 --d 5 --delta 1", "LMLAB_TIMEOUT_S=abc").code, 64);
  EXPECT_EQ(run("verify za1 --d 5 --delta 1 --timeout-s -1").code, 64);
  auto r = run("verify za1 --d 6 --delta 2 --mode complete", "LMLAB_TIMEOUT_S=0.000001");
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_NE(r.out.find("timeout  za1"), std::string::npos) << r.out;
}
