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

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "oracles.h"
#include "tempoforge/splits.h"

namespace tempoforge {
namespace {

const std::vector<Problem>& Corpus() {
  static const std::vector<Problem> corpus = [] {
    GenConfig c;
    c.seed = 12;
    c.k = 20;
    return testing::GenerateCorpus(c);
  }();
  return corpus;
}

TEST(ManifestTest, ParseFormatRoundTrip) {
  for (const auto& name : PresetNames()) {
    const auto m = Preset(name);
    EXPECT_EQ(ParseManifest(FormatManifest(m)), m) << name;
    EXPECT_NO_THROW(CheckManifest(m));
  }
  EXPECT_THROW(Preset("nope"), SplitError);
}

TEST(ManifestTest, ShippedFilesMatchPresets) {
  for (const auto& name : PresetNames()) {
    const auto text = util::ReadFile(testing::DataPath("presets/" + name + ".manifest"));
    EXPECT_EQ(ParseManifest(text), Preset(name)) << name;
  }
}

TEST(ManifestTest, InvariantsRejectBadTrainSets) {
  EXPECT_THROW(CheckManifest({SplitAxis::kFragment, "x", {"Interval|*|challenging"}, {"*"}}), SplitError);
  EXPECT_THROW(CheckManifest({SplitAxis::kFormat, "hard", {"Y", "YM"}, {"*"}}), SplitError);
  EXPECT_THROW(CheckManifest({SplitAxis::kFormat, "easy", {"YMD"}, {"*"}}), SplitError);
  EXPECT_THROW(CheckManifest({SplitAxis::kSpan, "n/a", {"short"}, {"*"}}), SplitError);
  EXPECT_THROW(CheckManifest({SplitAxis::kIid, "n/a", {}, {"*"}}), SplitError);
}

TEST(KeyTest, FragmentWildcards) {
  EXPECT_TRUE(KeyMatches("*|*|basic", "Interval|Completion of eventuality|basic", SplitAxis::kFragment));
  EXPECT_FALSE(KeyMatches("*|*|basic", "Interval|Completion of eventuality|challenging", SplitAxis::kFragment));
  EXPECT_TRUE(KeyMatches("*", "YMD", SplitAxis::kFormat));
  EXPECT_FALSE(KeyMatches("Y", "YM", SplitAxis::kFormat));
}

TEST(SplitTest, FormatHard) {
  const auto r = BuildSplit(Corpus(), Preset("format_hard"));
  const std::set<std::string> single = {"Y", "M", "D", "H"};
  for (const auto& p : r.train) {
    EXPECT_TRUE(single.count(p.time_format->Name()));
    EXPECT_EQ(p.pool, Pool::kTrain);
  }
  bool ymdh_unseen = false;
  for (const auto& t : r.test) {
    EXPECT_EQ(t.problem.pool, Pool::kTest);
    EXPECT_EQ(t.seen, single.count(t.problem.time_format->Name()) > 0);
    ymdh_unseen |= t.problem.time_format->Name() == "YMDH" && !t.seen;
  }
  EXPECT_TRUE(ymdh_unseen);
  EXPECT_GT(r.without_key, 0);
}

TEST(SplitTest, EasyTrainContainsHardTrain) {
  const auto hard = BuildSplit(Corpus(), Preset("format_hard"));
  const auto easy = BuildSplit(Corpus(), Preset("format_easy"));
  std::set<std::string> easy_ids, easy_unseen;
  for (const auto& p : easy.train) easy_ids.insert(p.id);
  for (const auto& p : hard.train) EXPECT_TRUE(easy_ids.count(p.id));
  for (const auto& t : easy.test) {
    if (!t.seen) easy_unseen.insert(t.problem.id);
  }
  for (const auto& t : hard.test) {
    if (easy_unseen.count(t.problem.id)) EXPECT_FALSE(t.seen);
  }
}

TEST(SplitTest, FragmentEasyAndIid) {
  const auto r = BuildSplit(Corpus(), Preset("fragment_easy"));
  for (const auto& t : r.test) EXPECT_EQ(t.seen, t.problem.difficulty == Difficulty::kBasic);
  EXPECT_EQ(r.without_key, 0);
  const auto iid = BuildSplit(Corpus(), Preset("iid"));
  for (const auto& t : iid.test) EXPECT_TRUE(t.seen);
}

TEST(SplitTest, StrayTestKeyFails) {
  const SplitManifest m{SplitAxis::kFormat, "hard", {"Y"}, {"YMD"}};
  EXPECT_THROW(BuildSplit(Corpus(), m), SplitError);
}

TEST(SplitTest, Idempotent) {
  const auto m = Preset("span");
  const auto r = BuildSplit(Corpus(), m);
  std::vector<Problem> again = r.train;
  for (const auto& t : r.test) again.push_back(t.problem);
  const auto r2 = BuildSplit(again, m);
  EXPECT_EQ(r2.train, r.train);
  ASSERT_EQ(r2.test.size(), r.test.size());
  for (size_t i = 0; i < r.test.size(); ++i) EXPECT_EQ(r2.test[i].seen, r.test[i].seen);
  EXPECT_EQ(ReadTestItems(WriteTestItems(r.test)).size(), r.test.size());
}

std::vector<TestItem> Items(int seen, int unseen) {
  std::vector<TestItem> out;
  for (int i = 0; i < seen + unseen; ++i) {
    Problem p;
    p.id = "p" + std::to_string(i);
    p.gold = Label::kEntailment;
    out.push_back({p, i < seen});
  }
  return out;
}

Predictions MakeRun(const std::vector<TestItem>& items, int ok_seen, int ok_unseen) {
  Predictions pr;
  int s = 0, u = 0;
  for (const auto& t : items) {
    const bool ok = t.seen ? s++ < ok_seen : u++ < ok_unseen;
    pr[t.problem.id] = ok ? Label::kEntailment : Label::kNeutral;
  }
  return pr;
}

TEST(ScoreTest, PerfectPredictor) {
  const auto items = Items(30, 20);
  const auto r = Score(items, {MakeRun(items, 30, 20)});
  EXPECT_EQ(r.seen.mean, 1.0);
  EXPECT_EQ(r.unseen.mean, 1.0);
  EXPECT_EQ(r.delta.mean, 0.0);
}

TEST(ScoreTest, FiveRunFixture) {
  const auto items = Items(100, 100);
  const int s[] = {87, 85, 89, 86, 88}, u[] = {40, 42, 44, 41, 43};
  std::vector<Predictions> runs;
  for (int i = 0; i < 5; ++i) runs.push_back(MakeRun(items, s[i], u[i]));
  const auto r = Score(items, runs);
  EXPECT_NEAR(r.seen.mean, 0.87, 1e-12);
  EXPECT_NEAR(r.seen.std, 0.014142135623730951, 1e-12);
  EXPECT_NEAR(r.unseen.mean, 0.42, 1e-12);
  EXPECT_NEAR(r.delta.mean, 0.45, 1e-12);
  EXPECT_NEAR(r.delta.std, 0.012649110640673518, 1e-12);
  EXPECT_NE(ScoreTsv(r, "x").find("std=population"), std::string::npos);
  const auto same = Score(items, {runs[0], runs[0], runs[0]});
  EXPECT_EQ(same.seen.std, 0.0);
}

TEST(ScoreTest, SummarizeConventions) {
  const std::vector<double> xs = {0.40, 0.41, 0.42, 0.43, 0.44};
  EXPECT_NEAR(Summarize(xs, false).mean, 0.42, 1e-12);
  EXPECT_NEAR(Summarize(xs, false).std, 0.0141421356237, 1e-10);
  EXPECT_NEAR(Summarize(xs, true).std, 0.0158113883008, 1e-10);
}

TEST(ScoreTest, BadPredictions) {
  const auto items = Items(2, 2);
  auto pr = MakeRun(items, 2, 2);
  pr.erase("p0");
  EXPECT_THROW(Score(items, {pr}), ValidationError);
  auto extra = MakeRun(items, 2, 2);
  extra["ghost"] = Label::kNeutral;
  EXPECT_THROW(Score(items, {extra}), ValidationError);
  EXPECT_THROW(ParsePredictions("p0\tMaybe\n"), ParseError);
}

}  // namespace
}  // namespace tempoforge
