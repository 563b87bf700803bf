// Copyright 2026 The paritysim Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "paritysim/linalg.hpp"

namespace paritysim::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("paritysim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int call(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }

  static std::vector<std::vector<std::string>> rows(const std::string& p) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::string cell;
      std::istringstream ls(line);
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      if (!line.empty() && line.back() == ',') cells.emplace_back();
      out.push_back(cells);
    }
    return out;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST(ParseAngle, AcceptsPiMultiplesAndRadians) {
  EXPECT_DOUBLE_EQ(parse_angle("0.9pi"), 0.9 * kPi);
  EXPECT_DOUBLE_EQ(parse_angle("pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_angle("-0.04pi"), -0.04 * kPi);
  EXPECT_DOUBLE_EQ(parse_angle("0.5*pi"), 0.5 * kPi);
  EXPECT_DOUBLE_EQ(parse_angle("2.5"), 2.5);
  EXPECT_THROW(parse_angle("0.9 rad"), std::exception);
  EXPECT_THROW(parse_angle(""), std::exception);
}

TEST(Format, SeventeenDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(manifest_path_for("a/b.csv"), "a/b.manifest.json");
}

TEST_F(CliTest, ErrpSweepPerfectNumbers) {
  ASSERT_EQ(call({"errp-sweep", "--phi", "0.9pi", "--noise", "none", "--n-max", "4", "--out", path("e.csv")}), 0)
      << err_.str();
  const auto r = rows(path("e.csv"));
  ASSERT_EQ(r.size(), 5u);
  EXPECT_EQ(r[0], (std::vector<std::string>{"n", "model", "param", "max_errp", "avg_errp_analytic",
                                            "avg_errp_sampled"}));
  EXPECT_NEAR(std::stod(r[2][3]), 5.99e-4, 5e-7);
  EXPECT_EQ(r[2][5], "");  // no seed, no sampled column
}

TEST_F(CliTest, ErrpSweepSampledAndPauli) {
  ASSERT_EQ(call({"errp-sweep", "--phi", "0.9pi", "--noise", "pz", "--param", "0.02", "--n-max", "2",
                  "--seed", "4", "--out", path("z.csv")}),
            0);
  const auto r = rows(path("z.csv"));
  EXPECT_NEAR(std::stod(r[1][4]), 0.0317, 5e-5);
  EXPECT_NEAR(std::stod(r[2][4]), 0.0207, 5e-5);
  EXPECT_NEAR(std::stod(r[2][5]), std::stod(r[2][4]), 0.003);
  ASSERT_EQ(call({"errp-sweep", "--phi", "0.9pi", "--noise", "px", "--param", "0.08", "--n-max", "2",
                  "--out", path("x.csv")}),
            0);
  const auto x = rows(path("x.csv"));
  EXPECT_NEAR(std::stod(x[1][3]), 0.0245, 5e-5);
  EXPECT_NEAR(std::stod(x[2][3]), 0.0152, 5e-5);
}

TEST_F(CliTest, FidelitySweepIsByteIdenticalAcrossRuns) {
  const std::vector<std::string> args{"fidelity-sweep", "--phi", "0.8pi", "--n-max", "3",
                                      "--samples", "10", "--seed", "7", "--naive", "--out", path("f.csv")};
  ASSERT_EQ(call(args), 0) << err_.str();
  const std::string first = slurp(path("f.csv"));
  ASSERT_EQ(call(args), 0);
  EXPECT_EQ(slurp(path("f.csv")), first);
  const auto r = rows(path("f.csv"));
  EXPECT_EQ(r.size(), 7u);
  EXPECT_EQ(r[0].size(), 8u);
  EXPECT_EQ(r.back().back(), "naive");
}

TEST_F(CliTest, ManifestRecordsRunAndReplays) {
  ASSERT_EQ(call({"fidelity-sweep", "--phi", "0.9pi", "--w", "0.04pi", "--n-max", "2", "--samples", "20",
                  "--noise-samples", "5", "--seed", "3", "--out", path("g.csv")}),
            0)
      << err_.str();
  const auto manifest = nlohmann::json::parse(slurp(path("g.manifest.json")));
  for (const char* key : {"command", "args", "seed", "versions", "outputs", "elapsed_seconds"}) {
    EXPECT_TRUE(manifest.contains(key)) << key;
  }
  EXPECT_EQ(manifest["command"], "fidelity-sweep");
  EXPECT_EQ(manifest["seed"], 3);
  ASSERT_EQ(call({"replay", path("g.manifest.json")}), 0) << err_.str();
  std::ofstream(path("g.csv"), std::ios::app) << "tampered\n";
  EXPECT_EQ(call({"replay", path("g.manifest.json")}), kExitValidation);
}

TEST_F(CliTest, GridModeReportsBestCycleCount) {
  ASSERT_EQ(call({"fidelity-sweep", "--grid", "--phi-min", "0.8pi", "--phi-max", "pi", "--grid-steps", "3",
                  "--n-max", "3", "--samples", "20", "--seed", "1", "--out", path("grid.csv")}),
            0)
      << err_.str();
  const auto r = rows(path("grid.csv"));
  ASSERT_EQ(r.size(), 10u);
  EXPECT_EQ(r[0][0], "phi1");
  // (pi, pi) is a perfect projection at every n.
  EXPECT_NEAR(std::stod(r.back()[3]), 1.0, 1e-12);
}

TEST_F(CliTest, BasisSweepMinimumAtMidpoint) {
  ASSERT_EQ(call({"basis-sweep", "--phi-mean", "0.8pi", "--delta-phi", "0", "--steps", "41", "--out",
                  path("b.csv")}),
            0);
  const auto r = rows(path("b.csv"));
  ASSERT_EQ(r.size(), 42u);
  std::size_t best = 1;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (std::stod(r[i][1]) < std::stod(r[best][1])) best = i;
  }
  EXPECT_EQ(best, 21u);
  // Zero imbalance: cos^2(phi/2) / 2.
  EXPECT_NEAR(std::stod(r[best][1]), std::pow(std::cos(0.4 * kPi), 2) / 2, 1e-15);
}

TEST_F(CliTest, OracleAuditAndNegativeControl) {
  EXPECT_EQ(call({"oracle-audit", "--grid-size", "20", "--seed", "1", "--out", path("a.csv")}), 0)
      << err_.str();
  EXPECT_TRUE(fs::exists(path("a.audit.json")));
  EXPECT_EQ(call({"oracle-audit", "--grid-size", "20", "--seed", "1", "--inject-fault", "--out",
                  path("bad.csv")}),
            kExitValidation);
}

TEST_F(CliTest, BadArgumentsExitTwo) {
  EXPECT_EQ(call({"errp-sweep", "--phi", "0.9pi", "--noise", "amplitude", "--out", path("x.csv")}), kExitUsage);
  EXPECT_EQ(call({"fidelity-sweep", "--phi", "0.9pi", "--out", path("x.csv")}), kExitUsage);  // no seed
  EXPECT_EQ(call({"fidelity-sweep", "--phi", "0.9pi", "--seed", "1", "--n-max", "0", "--out", path("x.csv")}),
            kExitUsage);
  EXPECT_EQ(call({"basis-sweep", "--phi-mean", "bogus", "--out", path("x.csv")}), kExitUsage);
  EXPECT_EQ(call({"no-such-command"}), kExitUsage);
  EXPECT_EQ(call({"errp-sweep", "--phi", "0.9pi"}), kExitUsage);  // missing --out
  EXPECT_EQ(call({"errp-sweep", "--phi", "0.9pi", "--noise", "pz", "--param", "1.5", "--out", path("x.csv")}),
            kExitUsage);
}

}  // namespace
}  // namespace paritysim::cli
