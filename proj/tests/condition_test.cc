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

#include <string>
#include <vector>

#include "oracles.h"
#include "tempoforge/condition.h"
#include "tempoforge/evaluate.h"

namespace tempoforge {
namespace {

const Label E = Label::kEntailment, C = Label::kContradiction, N = Label::kNeutral;

ConditionAst Parse(const std::string& text) {
  std::vector<Diagnostic> d;
  auto ast = ParseCondition(text, d);
  EXPECT_TRUE(d.empty()) << (d.empty() ? "" : d[0].ToString());
  return ast.value_or(ConditionAst{});
}

TemporalSlotRef Iv(int i) { return {TemporalKind::kInterval, i}; }
TemporalSlotRef Tp(int i) { return {TemporalKind::kTimePoint, i}; }

TimeFormat F(const char* name) { return *TimeFormat::Parse(name); }

TEST(ConditionParseTest, IntervalComparison) {
  const auto ast = Parse("if interval_1 <= interval_2 then Entailment else Neutral");
  ASSERT_EQ(ast.branches.size(), 1u);
  ASSERT_EQ(ast.branches[0].conjuncts.size(), 1u);
  const auto& c = ast.branches[0].conjuncts[0];
  EXPECT_EQ(c.op, CompareOp::kLe);
  EXPECT_EQ(c.lhs.slot, Iv(1));
  EXPECT_EQ(c.rhs.slot, Iv(2));
  EXPECT_EQ(ast.branches[0].label, E);
  EXPECT_EQ(ast.fallback, N);
}

TEST(ConditionParseTest, ConstantIsLeaf) {
  EXPECT_EQ(Parse("Entailment"), ConditionAst::Leaf(E));
  EXPECT_EQ(Parse("Contradiction").MentionedLabels(), std::set<Label>{C});
}

TEST(ConditionParseTest, FormatRoundTrip) {
  for (const auto& text : {
           "if interval_1 <= interval_2 then Entailment else Neutral",
           "if timepoint_1 <= timepoint_3 and timepoint_3 <= timepoint_2 then Contradiction "
           "else if timepoint_1 == timepoint_2 then Entailment else Neutral",
           "if dow(timepoint_1 - 1 day) == Saturday then Entailment else Contradiction",
           "if timepoint_2 < timepoint_1 + interval_1 then Entailment else Neutral",
           "Neutral"}) {
    const auto ast = Parse(text);
    EXPECT_EQ(Parse(FormatCondition(ast)), ast) << text;
  }
  for (const auto& t : testing::LoadDemo().templates) {
    EXPECT_EQ(Parse(FormatCondition(t.condition)), t.condition) << t.id;
  }
}

TEST(ConditionParseTest, SyntaxErrorsCarryPositions) {
  for (const auto& text : {"if interval_1 <= then Entailment else Neutral",
                           "if interval_1 <= interval_2 then Maybe else Neutral",
                           "if interval_1 <= interval_2 Entailment",
                           "if interval_1 ~ interval_2 then Entailment else Neutral"}) {
    std::vector<Diagnostic> d;
    EXPECT_FALSE(ParseCondition(text, d, {7, 3}).has_value()) << text;
    ASSERT_FALSE(d.empty()) << text;
    EXPECT_EQ(d[0].pos.line, 7) << text;
  }
}

TEST(TypeCheckTest, UnboundAndMismatchedSlots) {
  const auto ast = Parse("if interval_1 <= interval_3 then Entailment else Neutral");
  const auto d = TypeCheck(ast, {Iv(1), Iv(2)});
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NE(d[0].message.find("unbound slot interval_3"), std::string::npos);
  EXPECT_FALSE(TypeCheck(Parse("if interval_1 < timepoint_1 then Entailment else Neutral"),
                         {Iv(1), Tp(1)})
                   .empty());
  EXPECT_TRUE(TypeCheck(Parse("if timepoint_2 < timepoint_1 + interval_1 then Entailment else Neutral"),
                        {Iv(1), Tp(1), Tp(2)})
                  .empty());
}

TEST(EvaluateTest, IntervalFixture) {
  const auto ast = Parse("if interval_1 <= interval_2 then Entailment else Neutral");
  for (int64_t a = 1; a <= 9; ++a) {
    for (int64_t b = 1; b <= 9; ++b) {
      const TemporalBindings bind = {{Iv(1), IntervalValue{a, Unit::kYear}},
                                     {Iv(2), IntervalValue{b, Unit::kYear}}};
      EXPECT_EQ(EvalCondition(ast, bind), a <= b ? E : N);
    }
  }
  EXPECT_THROW(EvalCondition(ast, {{Iv(1), IntervalValue{1, Unit::kYear}}}), EvalError);
}

// Every triple of the toy calendar against day-number arithmetic.
TEST(EvaluateTest, BetweenOverToyCalendar) {
  const auto ast = Parse(
      "if timepoint_1 <= timepoint_3 and timepoint_3 <= timepoint_2 then Entailment else Neutral");
  const auto& cal = testing::ToyCalendar();
  for (const auto& a : cal) {
    for (const auto& b : cal) {
      for (const auto& c : cal) {
        const auto da = testing::ChronoDays(a.y, a.m, a.d), db = testing::ChronoDays(b.y, b.m, b.d),
                   dc = testing::ChronoDays(c.y, c.m, c.d);
        const TemporalBindings bind = {{Tp(1), Truncate({a.y, a.m, a.d, 0}, F("YMD"))},
                                       {Tp(2), Truncate({b.y, b.m, b.d, 0}, F("YMD"))},
                                       {Tp(3), Truncate({c.y, c.m, c.d, 0}, F("YMD"))}};
        ASSERT_EQ(EvalCondition(ast, bind), da <= dc && dc <= db ? E : N);
      }
    }
  }
}

TEST(EvaluateTest, YesterdayWeekday) {
  const auto ast = Parse("if dow(timepoint_1 - 1 day) == Saturday then Entailment else Contradiction");
  for (const auto& d : testing::ToyCalendar()) {
    const auto y = testing::ChronoCivil(testing::ChronoDays(d.y, d.m, d.d) - 1);
    const Label want = testing::ZellerWeekday(y.y, y.m, y.d) == 6 ? E : C;
    EXPECT_EQ(EvalCondition(ast, {{Tp(1), Truncate({d.y, d.m, d.d, 0}, F("YMD"))}}), want);
  }
  // 2003-03-02 is a Sunday.
  EXPECT_EQ(EvalCondition(ast, {{Tp(1), Truncate({2003, 3, 2, 0}, F("YMD"))}}), E);
}

TEST(EvaluateTest, ClampingIsReported) {
  const auto ast = Parse("if timepoint_2 == timepoint_1 + interval_1 then Entailment else Neutral");
  const auto r = Evaluate(ast, {{Tp(1), Truncate({2001, 1, 31, 0}, F("YMD"))},
                                {Tp(2), Truncate({2001, 2, 28, 0}, F("YMD"))},
                                {Iv(1), IntervalValue{1, Unit::kMonth}}});
  EXPECT_TRUE(r.adjusted);
  const auto ok = Evaluate(ast, {{Tp(1), Truncate({2001, 1, 3, 0}, F("YMD"))},
                                 {Tp(2), Truncate({2001, 2, 3, 0}, F("YMD"))},
                                 {Iv(1), IntervalValue{1, Unit::kMonth}}});
  EXPECT_FALSE(ok.adjusted);
  EXPECT_EQ(ok.label, E);
}

}  // namespace
}  // namespace tempoforge
