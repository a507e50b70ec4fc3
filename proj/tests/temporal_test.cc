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

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "oracles.h"
#include "tempoforge/temporal.h"

namespace tempoforge {
namespace {

using testing::ChronoCivil;
using testing::ChronoDays;
using testing::ZellerWeekday;

TimeFormat F(const char* name) { return *TimeFormat::Parse(name); }

TEST(TimeFormatTest, TenFormatsWithNames) {
  std::vector<std::string> names;
  for (auto f : TimeFormat::All()) names.push_back(f.Name());
  EXPECT_EQ(names, (std::vector<std::string>{"Y", "M", "D", "H", "YM", "MD", "DH", "YMD", "MDH",
                                             "YMDH"}));
  EXPECT_FALSE(TimeFormat::Parse("YD").has_value());
  EXPECT_FALSE(TimeFormat::Parse("").has_value());
  EXPECT_EQ(F("MDH").Smallest(), Unit::kHour);
  EXPECT_EQ(F("MDH").Largest(), Unit::kMonth);
}

TEST(CalendarTest, MatchesChronoAcrossWindow) {
  for (int64_t z = ChronoDays(1999, 1, 1); z <= ChronoDays(2022, 12, 31); ++z) {
    const auto c = CivilFromDays(z);
    const auto o = ChronoCivil(z);
    ASSERT_EQ(c.year, o.y);
    ASSERT_EQ(c.month, o.m);
    ASSERT_EQ(c.day, o.d);
    ASSERT_EQ(DaysFromCivil(c.year, c.month, c.day), z);
  }
  EXPECT_EQ(DaysInMonth(2000, 2), 29);
  EXPECT_EQ(DaysInMonth(1900, 2), 28);
  EXPECT_EQ(DaysInMonth(2003, 2), 28);
}

TEST(DayOfWeekTest, MatchesZellerEveryDay) {
  for (int64_t z = ChronoDays(2000, 1, 1); z < ChronoDays(2021, 1, 1); ++z) {
    const auto c = ChronoCivil(z);
    const TimePoint tp{c.y, c.m, c.d, 12};
    ASSERT_EQ(static_cast<int>(DayOfWeek(tp)), ZellerWeekday(c.y, c.m, c.d));
  }
  EXPECT_EQ(DayOfWeek({2000, 1, 1, 0}), Weekday::kSaturday);
  EXPECT_EQ(ParseWeekday(WeekdayName(Weekday::kTuesday)), Weekday::kTuesday);
}

TEST(DayOfWeekTest, ShiftDaysCrossesLeapDay) {
  const TimePoint p = ShiftDays({2000, 3, 1, 5}, -1);
  EXPECT_EQ(p, (TimePoint{2000, 2, 29, 5}));
  EXPECT_EQ(ShiftDays({2003, 3, 1, 0}, -1), (TimePoint{2003, 2, 28, 0}));
}

TEST(TruncateTest, Examples) {
  const TimePoint a{2010, 1, 1, 0};
  const auto md = Truncate(a, F("MD"));
  EXPECT_EQ(md.month, 1);
  EXPECT_EQ(md.day, 1);
  const auto y = Truncate({2016, 11, 18, 15}, F("Y"));
  EXPECT_EQ(y.year, 2016);
  const auto full = Truncate({2016, 11, 18, 15}, F("YMDH"));
  EXPECT_EQ(full.year, 2016);
  EXPECT_EQ(full.month, 11);
  EXPECT_EQ(full.day, 18);
  EXPECT_EQ(full.hour, 15);
  EXPECT_EQ(Truncate({2016, 11, 18, 15}, F("H")), Truncate({2003, 2, 1, 15}, F("H")));
}

TEST(CompareTest, ExampleAndMismatch) {
  const TimePoint a{2010, 1, 1, 1}, b{2020, 10, 10, 10};
  for (auto f : TimeFormat::All()) {
    const auto ta = Truncate(a, f), tb = Truncate(b, f);
    EXPECT_EQ(Compare(ta, tb), std::strong_ordering::less) << f.Name();
    EXPECT_EQ(Compare(tb, ta), std::strong_ordering::greater) << f.Name();
  }
  EXPECT_THROW(Compare(Truncate(a, F("Y")), Truncate(a, F("YM"))), TemporalError);
}

TEST(CompareTest, TotalOrderProperties) {
  Rng rng(11);
  for (auto f : TimeFormat::All()) {
    for (int i = 0; i < 2000; ++i) {
      const auto x = Truncate(SampleTimePoint(rng), f);
      const auto y = Truncate(SampleTimePoint(rng), f);
      const auto z = Truncate(SampleTimePoint(rng), f);
      ASSERT_EQ(Compare(x, x), std::strong_ordering::equal);
      ASSERT_EQ(Compare(x, y) < 0, Compare(y, x) > 0);
      if (Compare(x, y) <= 0 && Compare(y, z) <= 0) ASSERT_TRUE(Compare(x, z) <= 0);
      ASSERT_EQ(Diff(x, x), 0);
      ASSERT_EQ(Diff(x, y), -Diff(y, x));
      ASSERT_EQ(Diff(x, y) < 0, Compare(x, y) < 0);
    }
  }
}

TEST(AddTest, DiffRecoversIntervalWithoutAdjustment) {
  Rng rng(5);
  int checked = 0;
  for (auto f : TimeFormat::All()) {
    const Unit u = f.Smallest();
    for (int i = 0; i < 2000; ++i) {
      const auto x = Truncate(SampleTimePoint(rng), f);
      const IntervalValue iv = SampleInterval(u, SpanMode::kRandom, rng);
      const auto r = Add(x, iv);
      if (r.adjusted()) continue;
      ASSERT_EQ(Diff(r.value, x), iv.magnitude) << f.Name();
      ASSERT_TRUE(Compare(r.value, x) > 0);
      const auto back = Subtract(r.value, iv);
      if (!back.adjusted()) ASSERT_EQ(back.value, x);
      ++checked;
    }
  }
  EXPECT_GT(checked, 10000);
}

TEST(AddTest, ClampAndOverflowFlags) {
  const auto jan31 = Truncate({2000, 1, 31, 0}, F("YMD"));
  const auto r = Add(jan31, {1, Unit::kMonth});
  EXPECT_TRUE(r.clamped);
  EXPECT_EQ(r.value.month, 2);
  EXPECT_EQ(r.value.day, 29);
  const auto dec = Truncate({2005, 12, 1, 0}, F("M"));
  const auto o = Add(dec, {1, Unit::kMonth});
  EXPECT_TRUE(o.overflow);
  EXPECT_FALSE(Add(Truncate({2005, 11, 1, 0}, F("M")), {1, Unit::kMonth}).adjusted());
  EXPECT_THROW(Add(Truncate({2005, 11, 1, 0}, F("M")), {1, Unit::kDay}), TemporalError);
}

TEST(SampleTest, WithinWindowAndDeterministic) {
  Rng a(3), b(3);
  for (int i = 0; i < 10000; ++i) {
    const auto p = SampleTimePoint(a);
    ASSERT_EQ(p, SampleTimePoint(b));
    ASSERT_GE(p, kWindowStart);
    ASSERT_LT(p, kWindowEnd);
  }
}

TEST(SampleTest, YearHistogramWithinThreeSigma) {
  const int n = 100000;
  std::map<int64_t, int> hist;
  Rng rng(2024);
  for (int i = 0; i < n; ++i) hist[SampleTimePoint(rng).year]++;
  const double total = static_cast<double>(ChronoDays(2021, 1, 1) - ChronoDays(2000, 1, 1));
  ASSERT_EQ(hist.size(), 21u);
  for (int64_t y = 2000; y <= 2020; ++y) {
    const double p = (ChronoDays(y + 1, 1, 1) - ChronoDays(y, 1, 1)) / total;
    const double expect = n * p, sigma = std::sqrt(n * p * (1 - p));
    EXPECT_LE(std::abs(hist[y] - expect), 3 * sigma) << y;
  }
}

TEST(ShortSpanTest, WindowsAndYearOnlyThrows) {
  EXPECT_EQ(ShortWindow(F("YMDH")), (IntervalValue{8, Unit::kHour}));
  EXPECT_EQ(ShortWindow(F("YMD")), (IntervalValue{10, Unit::kDay}));
  EXPECT_EQ(ShortWindow(F("YM")), (IntervalValue{4, Unit::kMonth}));
  Rng rng(1);
  EXPECT_THROW(SampleTimePointsShort(F("Y"), 2, rng), TemporalError);
  EXPECT_THROW(SampleTimePointsShort(F("YMD"), 0, rng), TemporalError);
  EXPECT_EQ(SampleTimePointsShort(F("YMDH"), 1, rng).size(), 1u);
}

TEST(ShortSpanTest, GapsBoundedInEveryFormat) {
  Rng rng(9);
  for (auto f : TimeFormat::All()) {
    if (f.Smallest() == Unit::kYear) continue;
    const auto w = ShortWindow(f);
    for (int i = 0; i < 3000; ++i) {
      const auto pts = SampleTimePointsShort(f, 3, rng);
      for (const auto& p : pts) {
        for (const auto& q : pts) {
          ASSERT_LE(std::abs(Diff(Truncate(p, f), Truncate(q, f))), w.magnitude) << f.Name();
        }
      }
    }
  }
}

// Empirical day-gap CDF of the sampler against an independent simulation
// of two uniform hours inside a 240-hour window.
TEST(ShortSpanTest, DayGapMatchesSimulation) {
  const int n = 10000;
  Rng rng(77);
  std::vector<int64_t> got, sim;
  for (int i = 0; i < n; ++i) {
    const auto p = SampleTimePointsShort(F("YMD"), 2, rng);
    got.push_back(std::abs(p[0].ToDays() - p[1].ToDays()));
  }
  std::mt19937_64 eng(4242);
  const int64_t lo = ChronoDays(2000, 1, 1) * 24, hi = ChronoDays(2021, 1, 1) * 24 - 1 - 240;
  std::uniform_int_distribution<int64_t> base(lo, hi), off(0, 240);
  for (int i = 0; i < n; ++i) {
    const int64_t b = base(eng);
    const int64_t x = b + off(eng), y = b + off(eng);
    sim.push_back(std::abs(x / 24 - y / 24));
  }
  double ks = 0;
  for (int g = 0; g <= 10; ++g) {
    const double a = std::count_if(got.begin(), got.end(), [&](int64_t v) { return v <= g; });
    const double s = std::count_if(sim.begin(), sim.end(), [&](int64_t v) { return v <= g; });
    ks = std::max(ks, std::abs(a - s) / n);
  }
  EXPECT_LT(ks, 0.035);
  EXPECT_EQ(*std::max_element(got.begin(), got.end()) <= 10, true);
}

TEST(IntervalTest, RandomMagnitudesUniform) {
  Rng rng(8);
  std::map<int64_t, int> hist;
  for (int i = 0; i < 90000; ++i) hist[SampleInterval(Unit::kDay, SpanMode::kRandom, rng).magnitude]++;
  ASSERT_EQ(hist.size(), 9u);
  for (const auto& [m, c] : hist) {
    EXPECT_GE(m, 1);
    EXPECT_LE(m, 9);
    EXPECT_NEAR(c, 10000, 400) << m;
  }
  for (int i = 0; i < 1000; ++i) {
    const auto iv = SampleInterval(Unit::kHour, SpanMode::kShort, rng);
    ASSERT_GE(iv.magnitude, 1);
    ASSERT_LE(iv.magnitude, 3);
  }
}

TEST(EnumerateTest, CountsAndOrder) {
  for (auto f : TimeFormat::All()) {
    const auto all = EnumerateTruncations(f);
    EXPECT_EQ(static_cast<int64_t>(all.size()), TruncationCount(f)) << f.Name();
    for (size_t i = 1; i < all.size(); ++i) ASSERT_TRUE(Compare(all[i - 1], all[i]) < 0);
  }
  EXPECT_EQ(TruncationCount(F("Y")), 21);
  EXPECT_EQ(TruncationCount(F("MD")), 366);
}

}  // namespace
}  // namespace tempoforge
