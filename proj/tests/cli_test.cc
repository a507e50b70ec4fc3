// Copyright 2026 The Tempoforge Authors.
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
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.h"
#include "tempoforge/cli.h"

namespace tempoforge {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tempoforge_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int Run(const std::vector<std::string>& args, const std::string& input = "",
          const std::map<std::string, std::string>& env = {}) {
    std::istringstream in(input);
    out_.str("");
    err_.str("");
    return cli::RunCommand(args, in, out_, err_, [env](const char* name) -> const char* {
      auto it = env.find(name);
      return it == env.end() ? nullptr : it->second.c_str();
    });
  }

  std::string P(const std::string& rel) const { return (dir_ / rel).string(); }

  void WriteFile(const std::string& rel, const std::string& text) const {
    fs::create_directories((dir_ / rel).parent_path());
    std::ofstream(dir_ / rel, std::ios::binary) << text;
  }

  nlohmann::json Manifest(const std::string& rel) const {
    return nlohmann::json::parse(util::ReadFile(P(rel + "/run_manifest.json")));
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Run({}), cli::kExitUsage);
  EXPECT_EQ(Run({"validate", "--no-such-flag"}), cli::kExitUsage);
  EXPECT_EQ(Run({"frobnicate"}), cli::kExitUsage);
  EXPECT_EQ(Run({"split", "--problems", "x", "--out", P("s")}), cli::kExitUsage);
}

TEST_F(CliTest, Sha256) {
  EXPECT_EQ(cli::Sha256Hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(CliTest, ValidateExitCodes) {
  EXPECT_EQ(Run({"validate"}), cli::kExitOk);
  WriteFile("bad.tpl",
            "[template b]\nmain = Interval\nsub = Comparison of two intervals\ndifficulty = basic\n"
            "P: {agent_1} は {interval_1} 。\nH: {agent_1} 。\n"
            "G: if interval_1 <= interval_3 then Entailment else Neutral\n");
  EXPECT_EQ(Run({"validate", P("bad.tpl"), "--out", P("v")}), cli::kExitValidation);
  EXPECT_NE(err_.str().find("unbound slot interval_3"), std::string::npos);
  EXPECT_EQ(Manifest("v")["complete"], true);
}

TEST_F(CliTest, AnalyzeFlagsPlantedToken) {
  std::vector<Problem> ps;
  for (int i = 0; i < 300; ++i) {
    Problem p;
    p.id = "p" + std::to_string(i);
    p.premises = {i < 60 ? "合図 a" : "a"};
    p.hypothesis = "b";
    p.gold = i < 60 ? Label::kEntailment : static_cast<Label>(i % 3);
    ps.push_back(p);
  }
  WriteFile("planted.jsonl", WriteProblems(ps));
  EXPECT_EQ(Run({"analyze", "--problems", P("planted.jsonl"), "--out", P("a")}), cli::kExitArtifacts);
  const auto report = util::ReadFile(P("a/report.tsv"));
  EXPECT_NE(report.find("合図\t60\t60\t0\t0"), std::string::npos);
}

TEST_F(CliTest, PipelineSplitAndScore) {
  ASSERT_EQ(Run({"gen-candidates", "--out", P("c"), "--fan_out", "20"}), cli::kExitOk);
  ASSERT_EQ(Run({"instantiate", "--candidates", P("c/candidates.jsonl"), "--out", P("i"),
                 "--review_mode", "permissive"}),
            cli::kExitOk);
  ASSERT_EQ(Run({"split", "--problems", P("i/problems.jsonl"), "--preset", "format_hard", "--out", P("s")}),
            cli::kExitOk);
  std::string preds;
  for (const auto& t : ReadTestItems(util::ReadFile(P("s/test.jsonl")))) {
    preds += t.problem.id + "\t" + std::string(LabelName(t.problem.gold)) + "\n";
  }
  WriteFile("perfect.tsv", preds);
  ASSERT_EQ(Run({"score", "--test", P("s/test.jsonl"), "--predictions", P("perfect.tsv"), "--out", P("r"),
                 "--name", "format_hard"}),
            cli::kExitOk);
  const auto lines = util::Lines(util::ReadFile(P("r/score.tsv")));
  ASSERT_FALSE(lines.empty());
  const auto row = util::Split(lines.back(), '\t');
  ASSERT_EQ(row.size(), 7u);
  EXPECT_EQ(row[0], "format_hard");
  EXPECT_DOUBLE_EQ(std::stod(std::string(row[1])), 1.0);
  EXPECT_DOUBLE_EQ(std::stod(std::string(row[3])), 1.0);
  EXPECT_DOUBLE_EQ(std::stod(std::string(row[5])), 0.0);

  // Strict instantiate without decisions keeps only the train pool.
  ASSERT_EQ(Run({"instantiate", "--candidates", P("c/candidates.jsonl"), "--out", P("strict")}), cli::kExitOk);
  for (const auto& p : ReadProblems(util::ReadFile(P("strict/problems.jsonl")))) EXPECT_EQ(p.pool, Pool::kTrain);
}

TEST_F(CliTest, ManifestDigestsMatchFiles) {
  ASSERT_EQ(Run({"gen-candidates", "--out", P("c")}), cli::kExitOk);
  const auto m = Manifest("c");
  EXPECT_EQ(m["command"], "gen-candidates");
  EXPECT_EQ(m["complete"], true);
  for (const auto& [name, sha] : m["outputs"].items()) {
    EXPECT_EQ(sha, cli::Sha256Hex(util::ReadFile(P("c/" + name)))) << name;
  }
  for (const auto& in : m["inputs"]) {
    if (in["role"] == "lexicon") EXPECT_EQ(in["sha256"], cli::Sha256Hex(util::ReadFile(testing::DataPath("lexicon.tsv"))));
  }
  EXPECT_FALSE(m["config"].contains("workers"));
}

TEST_F(CliTest, ConfigPrecedence) {
  WriteFile("gen.cfg", "k = 3\nseed = 5\n");
  ASSERT_EQ(Run({"gen-candidates", "--config", P("gen.cfg"), "--out", P("f")}), cli::kExitOk);
  EXPECT_EQ(Manifest("f")["config"]["k"], "3");
  ASSERT_EQ(Run({"gen-candidates", "--config", P("gen.cfg"), "--out", P("e")}, "", {{"TEMPOFORGE_K", "4"}}),
            cli::kExitOk);
  EXPECT_EQ(Manifest("e")["config"]["k"], "4");
  EXPECT_EQ(Manifest("e")["config"]["seed"], "5");
  ASSERT_EQ(Run({"gen-candidates", "--config", P("gen.cfg"), "--k", "6", "--out", P("g")}, "",
                {{"TEMPOFORGE_K", "4"}}),
            cli::kExitOk);
  EXPECT_EQ(Manifest("g")["config"]["k"], "6");
  EXPECT_EQ(Run({"gen-candidates", "--out", P("bad")}, "", {{"TEMPOFORGE_K", "zero"}}), cli::kExitValidation);
}

TEST_F(CliTest, ReviewQueueAndMerge) {
  ASSERT_EQ(Run({"gen-candidates", "--out", P("c"), "--fan_out", "10", "--test_fraction", "1"}), cli::kExitOk);
  auto cands = ReadCandidates(util::ReadFile(P("c/candidates.jsonl")));
  std::vector<SentenceCandidate> one;
  for (const auto& c : cands) {
    if (c.template_id == "timepoint_before") one.push_back(c);
  }
  ASSERT_EQ(one.size(), 10u);
  WriteFile("one.jsonl", WriteCandidates(one));
  ASSERT_EQ(Run({"review", "--candidates", P("one.jsonl"), "--out", P("r")}, "r\na\nr\na\na\nr\na\na\nr\na\n"),
            cli::kExitOk);
  const auto log = util::ReadFile(P("r/decisions.tsv"));
  EXPECT_EQ(std::count(log.begin(), log.end(), '\n'), 10);
  EXPECT_EQ(ParseDecisions(log).size(), 10u);

  WriteFile("r1.tsv", "x#1\taccept\n");
  WriteFile("r2.tsv", "x#1\taccept\n");
  WriteFile("r3.tsv", "x#1\treject\n");
  ASSERT_EQ(Run({"review", "merge", P("r1.tsv"), P("r2.tsv"), P("r3.tsv"), "--out", P("m")}), cli::kExitOk);
  EXPECT_EQ(ParseDecisions(util::ReadFile(P("m/decisions.tsv"))).at("x#1"), Decision::kAccept);
  ASSERT_EQ(Run({"review", "merge", P("r1.tsv"), P("r2.tsv"), P("r3.tsv"), "--policy", "unanimity", "--out",
                 P("u")}),
            cli::kExitOk);
  EXPECT_EQ(ParseDecisions(util::ReadFile(P("u/decisions.tsv"))).at("x#1"), Decision::kReject);
}

}  // namespace
}  // namespace tempoforge
