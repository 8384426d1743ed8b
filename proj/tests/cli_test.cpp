// Copyright 2026 The tokenprune Authors.
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "test_support.hpp"
#include "tokenprune/cli.hpp"
#include "tokenprune/io.hpp"

namespace tokenprune {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int code;
  std::string out, err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tokenprune_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    write("fig.jsonl",
          R"({"doc_id":"fig","vectors":[[1,0],[-0.3,0.6],[0.4,0.1],[0.5,0.5]]})" "\n"
          R"({"doc_id":"line","vectors":[[1,0],[0.9,0],[0,1]]})" "\n");
    write("q.jsonl", R"({"query_id":"q1","vectors":[[1,0]]})" "\n"
                     R"({"query_id":"q2","vectors":[[0,1],[0.6,0.8]]})" "\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string p(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }
  CliRun run(std::vector<std::string> args) const {
    args.insert(args.begin(), "tokenprune");
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

TEST_F(Cli, PruneWritesIndexAndReport) {
  const auto r = run({"prune", "--in", p("fig.jsonl"), "--out", p("fig.dpr1"), "--strategy", "lp",
                      "--theta", "1.0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["per_doc"][0]["n_after"], 3);
  EXPECT_EQ(j["per_doc"][1]["n_after"], 2);
  EXPECT_DOUBLE_EQ(j["remaining_ratio"].get<double>(), 5.0 / 7.0);
  EXPECT_EQ(j["strategy"], "lp");
  const auto index = read_index_binary(p("fig.dpr1"));
  EXPECT_EQ(index.total_tokens(), 5u);
}

TEST_F(Cli, PruneThetaOutOfRangeIsUsageError) {
  EXPECT_EQ(run({"prune", "--in", p("fig.jsonl"), "--out", p("x"), "--theta", "1.5"}).code, 2);
  EXPECT_EQ(run({"prune", "--in", p("fig.jsonl"), "--out", p("x"), "--strategy", "norm",
                 "--theta", "-0.1"}).code,
            2);
  EXPECT_FALSE(fs::exists(p("x")));
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"prune", "--in", p("fig.jsonl")}).code, 2);
  EXPECT_EQ(run({"prune", "--in", p("fig.jsonl"), "--out", p("x"), "--strategy", "svd"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, MissingInputIsDataError) {
  const auto r = run({"prune", "--in", p("nope.jsonl"), "--out", p("x")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("IoError"), std::string::npos) << r.err;
}

TEST_F(Cli, VerifyExitCodes) {
  ASSERT_EQ(run({"prune", "--in", p("fig.jsonl"), "--out", p("fig.dpr1")}).code, 0);
  auto r = run({"verify", "--original", p("fig.jsonl"), "--pruned", p("fig.dpr1"), "--samples",
                "5000", "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["counterexamples"].size(), 0u);
  EXPECT_EQ(j["docs_checked"], 2);

  write("bad.jsonl", R"({"doc_id":"fig","vectors":[[-0.3,0.6],[0.5,0.5]]})" "\n"
                     R"({"doc_id":"line","vectors":[[1,0],[0,1]]})" "\n");
  r = run({"verify", "--original", p("fig.jsonl"), "--pruned", p("bad.jsonl"), "--samples", "5000"});
  EXPECT_EQ(r.code, 1);
  j = json::parse(r.out);
  EXPECT_EQ(j["counterexamples"].size(), 1u);
  EXPECT_EQ(j["counterexamples"][0]["doc_id"], "fig");
}

TEST_F(Cli, VerifyIsDeterministic) {
  ASSERT_EQ(run({"prune", "--in", p("fig.jsonl"), "--out", p("fig.dpr1")}).code, 0);
  const std::vector<std::string> args{"verify", "--original", p("fig.jsonl"), "--pruned",
                                      p("fig.dpr1"), "--samples", "300", "--seed", "5"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST_F(Cli, Score) {
  auto r = run({"score", "--index", p("fig.jsonl"), "--queries", p("q.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::vector<json> rows;
  while (std::getline(lines, line)) rows.push_back(json::parse(line));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0]["query_id"], "q1");
  EXPECT_EQ(rows[0]["ranking"].size(), 2u);
  // q2: fig scores 0.6 + 0.7 = 1.3 against line's 1 + 0.8.
  EXPECT_EQ(rows[1]["ranking"][0]["doc_id"], "line");
  EXPECT_NEAR(rows[1]["ranking"][0]["score"].get<double>(), 1.8, 1e-12);
  EXPECT_NEAR(rows[1]["ranking"][1]["score"].get<double>(), 1.3, 1e-12);

  r = run({"score", "--index", p("fig.jsonl"), "--queries", p("q.jsonl"), "--top", "1"});
  EXPECT_EQ(json::parse(r.out.substr(0, r.out.find('\n')))["ranking"].size(), 1u);
}

TEST_F(Cli, ScoreDimensionMismatch) {
  write("q3.jsonl", R"({"query_id":"q","vectors":[[1,0,0]]})" "\n");
  const auto r = run({"score", "--index", p("fig.jsonl"), "--queries", p("q3.jsonl")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("DimensionMismatch"), std::string::npos) << r.err;
}

TEST_F(Cli, Stats) {
  ASSERT_EQ(run({"prune", "--in", p("fig.jsonl"), "--out", p("fig.dpr1")}).code, 0);
  const auto r = run({"stats", "--index", p("fig.dpr1"), "--original", p("fig.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["tokens"], 5);
  EXPECT_EQ(j["original_tokens"], 7);
  EXPECT_DOUBLE_EQ(j["remaining_ratio"].get<double>(), 5.0 / 7.0);
  std::size_t total = 0;
  for (const auto& c : j["norm_histogram"]["counts"]) total += c.get<std::size_t>();
  EXPECT_EQ(total, 5u);
}

TEST_F(Cli, Oracle2d) {
  auto r = run({"oracle2d", "--in", p("fig.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out.substr(0, r.out.find('\n')));
  EXPECT_EQ(j["pruned"], json::array({2}));

  write("three.jsonl", R"({"doc_id":"a","vectors":[[1,0,0]]})" "\n");
  r = run({"oracle2d", "--in", p("three.jsonl")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("DimensionNot2"), std::string::npos);
}

TEST_F(Cli, NormStrategy) {
  const auto r = run({"prune", "--in", p("fig.jsonl"), "--out", p("n.dpr1"), "--strategy", "norm",
                      "--theta", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  // Norms below 0.5: (0.4, 0.1) only.
  EXPECT_EQ(read_index_binary(p("n.dpr1")).total_tokens(), 6u);
}

}  // namespace
}  // namespace tokenprune
