// Copyright 2026 The qscmlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QSCMLAB_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qscmlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, QscmOfBlochState) {
  ASSERT_EQ(run("state bloch --z 0.5 -o " + path("half.json")).code, 0);
  const auto r = run("qscm " + path("half.json"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["value"].get<double>(), 0.202820, 1e-6);
  EXPECT_EQ(j["dim"], 2);
  EXPECT_TRUE(j.contains("entropy_part"));
  EXPECT_TRUE(j.contains("disequilibrium_part"));
}

TEST_F(Cli, QscmOfMixedAndPureStatesIsZero) {
  ASSERT_EQ(run("state bloch -o " + path("mixed.json")).code, 0);
  EXPECT_NEAR(nlohmann::json::parse(run("qscm " + path("mixed.json")).out)["value"].get<double>(), 0.0, 1e-15);
  ASSERT_EQ(run("state random --dim 3 --seed 4 --pure -o " + path("pure.json")).code, 0);
  EXPECT_NEAR(nlohmann::json::parse(run("qscm " + path("pure.json")).out)["value"].get<double>(), 0.0, 1e-10);
}

TEST_F(Cli, InvalidStateExitsWithInputError) {
  std::ofstream(path("bad.json")) << R"({"dim":2,"re":[[0.7,0],[0,0.7]]})";
  EXPECT_EQ(run("qscm " + path("bad.json")).code, 2);
  std::ofstream(path("junk.json")) << "{not json";
  EXPECT_EQ(run("qscm " + path("junk.json")).code, 2);
  EXPECT_EQ(run("qscm " + path("missing.json")).code, 2);
}

TEST_F(Cli, BadFlagsExitWithInputError) {
  EXPECT_EQ(run("ising sweep --g-min 0 --g-max 1 --steps 5").code, 2);  // neither --size nor --thermo
  EXPECT_EQ(run("ising sweep --g-min 0 --g-max 1 --steps 5 --size 7").code, 2);
  EXPECT_EQ(run("xxz sweep --delta-min 0 --delta-max 1 --steps 3 --sizes 9").code, 2);
  EXPECT_EQ(run("nonsense").code, 2);
  EXPECT_EQ(run("verify --cases 0").code, 2);
}

TEST_F(Cli, VerifyPassesAndInjectedFaultFails) {
  const auto ok = run("verify --cases 10");
  EXPECT_EQ(ok.code, 0);
  const auto j = nlohmann::json::parse(ok.out);
  for (const auto& c : j["checks"]) EXPECT_TRUE(c.contains("max_residual"));
  EXPECT_EQ(run("verify --cases 10 --inject-fault 1.5").code, 1);
}

TEST_F(Cli, IsingSweepRowsAndDeterminism) {
  ASSERT_EQ(run("ising sweep --thermo --g-min 0 --g-max 2 --steps 200 -o " + path("a.csv")).code, 0);
  ASSERT_EQ(run("ising sweep --thermo --g-min 0 --g-max 2 --steps 200 --threads 3 -o " + path("b.csv")).code, 0);
  const auto a = slurp(path("a.csv"));
  EXPECT_EQ(a, slurp(path("b.csv")));
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "g,sigma_z,entropy,disequilibrium,qscm");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 2), "0,");
  EXPECT_EQ(line.substr(line.rfind(',') + 1), "0");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 200);
}

TEST_F(Cli, DetectFindsIsingPeak) {
  ASSERT_EQ(run("ising sweep --thermo --g-min 0.5 --g-max 1.5 --steps 201 -o " + path("i.csv")).code, 0);
  const auto r = run("detect --input " + path("i.csv") + " --orders 2");
  ASSERT_EQ(r.code, 0);
  bool found = false;
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& f : j["features"])
    if (f["kind"] == "peak" && f["derivative_order"] == 2) {
      found = true;
      EXPECT_NEAR(f["location"].get<double>(), 1.0, 0.02);
    }
  EXPECT_TRUE(found) << r.out;
}

TEST_F(Cli, XxzSweepExportReloadsIdentically) {
  const std::string base = "xxz sweep --delta-min 0 --delta-max 1 --steps 3 --sizes 8,10,12 --extrapolate";
  ASSERT_EQ(run(base + " --export " + path("t.csv") + " -o " + path("ed.csv")).code, 0);
  ASSERT_EQ(run("xxz sweep --tabulated " + path("t.csv") + " -o " + path("tab.csv")).code, 0);
  EXPECT_EQ(slurp(path("ed.csv")), slurp(path("tab.csv")));
  const auto csv = slurp(path("ed.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "delta,xx,zz,entropy,disequilibrium,qscm,uncertainty,degenerate_flag");
}

TEST_F(Cli, TabulatedConeViolationIsInputError) {
  std::ofstream(path("bad.csv")) << "delta,r,xx,zz\n0,1,0.9,0.5\n";
  EXPECT_EQ(run("xxz sweep --tabulated " + path("bad.csv")).code, 2);
}

TEST_F(Cli, SimplexGrid) {
  const auto r = run("xxz simplex --steps 5");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  int rows = -1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 25);
}

TEST_F(Cli, CuspBracketWithoutSignChangeIsInputError) {
  EXPECT_EQ(run("xxz cusp --bracket 3,4 --sizes 8,10,12").code, 2);
}

}  // namespace
