// Copyright 2026 The qmcontrol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the qmcontrol executable and checks exit codes and outputs.

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(QMC_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qmc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string read(const std::string& name) {
    std::ifstream in(dir_ / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::string presetFile(const std::string& name, const std::string& params = "") {
    const Result r = run("preset " + name + params);
    EXPECT_EQ(r.code, 0);
    return write(name + ".json", r.out);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::vector<std::vector<double>> parseCsv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

TEST_F(Cli, AnalyzeAmplitudeDamping) {
  const Result r = run("analyze " + presetFile("amplitude_damping"));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["accessible"].get<bool>());
  EXPECT_EQ(j["closure_dim"].get<int>(), 12);
}

TEST_F(Cli, AnalyzeIsDeterministic) {
  const std::string f = presetFile("bit_flip");
  EXPECT_EQ(run("analyze " + f).out, run("analyze " + f).out);
}

TEST_F(Cli, SimulatePhaseFlipKeepsPolarization) {
  const std::string f = presetFile("phase_flip");
  const Result r = run("simulate " + f + " --rho0 0.5,0,0.3 --horizon 2 --samples 20");
  ASSERT_EQ(r.code, 0);
  const auto rows = parseCsv(r.out);
  ASSERT_EQ(rows.size(), 21u);
  for (const auto& row : rows) EXPECT_NEAR(row[3], 0.3, 1e-12);
  EXPECT_LT(std::abs(rows.back()[1]), 0.5);
}

TEST_F(Cli, SimulateDepolarizingDecay) {
  const std::string f = presetFile("depolarizing", " --param gamma=0.5");
  const std::string c = write("c.json", R"([{"duration": 0.5, "u": [1, 0, 0]}, {"duration": 0.5, "u": [0, 2, 0]}])");
  const Result r = run("simulate " + f + " --controls " + c + " --rho0 0.2,0.1,0.4");
  ASSERT_EQ(r.code, 0);
  const auto rows = parseCsv(r.out);
  const auto norm = [](const std::vector<double>& row) { return std::hypot(row[1], row[2], row[3]); };
  EXPECT_NEAR(norm(rows.back()) / norm(rows.front()), std::exp(-1.0), 1e-10);
  EXPECT_NEAR(rows.back()[5], std::exp(-3.0), 1e-10);
}

TEST_F(Cli, ReachableIsReproducible) {
  const std::string f = presetFile("amplitude_damping");
  const std::string args = "reachable " + f + " --seed 7 --samples 500 --stats ";
  ASSERT_EQ(run(args + path("s1.json") + " --threads 1 --out " + path("a.csv")).code, 0);
  ASSERT_EQ(run(args + path("s2.json") + " --threads 3 --out " + path("b.csv")).code, 0);
  EXPECT_EQ(read("a.csv"), read("b.csv"));
  EXPECT_EQ(read("s1.json"), read("s2.json"));
  EXPECT_EQ(json::parse(read("s1.json"))["samples"].get<int>(), 500);
  EXPECT_EQ(parseCsv(read("a.csv")).size(), 500u * 11u);
}

TEST_F(Cli, ReachableUnitalNestedBalls) {
  const std::string f = presetFile("phase_flip");
  ASSERT_EQ(run("reachable " + f + " --rho0 0.3,0.3,0.3 --samples 50 --out " + path("c.csv") + " --stats " +
                path("s.json"))
                .code,
            0);
  const json s = json::parse(read("s.json"));
  EXPECT_EQ(s["nested_ball"], "pass");
  EXPECT_EQ(s["monotone_samples"], "pass");
}

TEST_F(Cli, VerifyExitCodes) {
  const Result r = run("verify");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(run("verify --strict-table").code, 1);
}

TEST_F(Cli, ErrorExitCodes) {
  EXPECT_EQ(run("analyze " + path("missing.json")).code, 2);
  EXPECT_EQ(run("analyze " + write("bad.json", "{\"schema_version\": 1,")).code, 2);
  const std::string nonPsd =
      write("np.json", R"({"schema_version": 1, "N": 2, "controls": [], "A_real": [[1,0,0],[0,-1,0],[0,0,0]]})");
  EXPECT_EQ(run("analyze " + nonPsd).code, 3);
  const Result permissive = run("analyze --permissive " + nonPsd);
  EXPECT_EQ(permissive.code, 0);
  EXPECT_FALSE(json::parse(permissive.out)["admissible"].get<bool>());
  EXPECT_EQ(run("simulate --permissive " + nonPsd + " --rho0 0.1,0,0 --horizon 30").code, 4);
  const std::string f = presetFile("depolarizing");
  EXPECT_EQ(run("simulate " + f + " --controls '[{\"duration\": 0}]'").code, 2);
  EXPECT_EQ(run("simulate " + f + " --rho0 1,0,0").code, 2);
  EXPECT_EQ(run("preset thermal").code, 2);
  EXPECT_EQ(run("preset depolarizing --param gamma=-1").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("reachable " + f + " --samples 0").code, 2);
}

TEST_F(Cli, StdinInput) {
  const std::string f = presetFile("bit_phase_flip");
  const Result r = run("analyze - < " + f);
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out)["accessible"].get<bool>());
}

}  // namespace
