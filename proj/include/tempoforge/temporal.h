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

// Calendar values used as the operands of gold-label conditions: time
// points at hour precision, their truncations to one of ten unit formats,
// and single-unit intervals.
//
// Truncated values are the source of truth for labels. Arithmetic on a
// truncated value first snaps it to the earliest instant consistent with
// it: absent year -> 2000, absent month -> January, absent day -> 1,
// absent hour -> 0. 2000 is a leap year, so every month-day pair snaps.

#ifndef TEMPOFORGE_TEMPORAL_H_
#define TEMPOFORGE_TEMPORAL_H_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "tempoforge/random.h"
#include "tempoforge/util.h"

namespace tempoforge {

class TemporalError : public Error {
 public:
  using Error::Error;
};

enum class Unit : uint8_t { kYear = 0, kMonth = 1, kDay = 2, kHour = 3 };

inline constexpr std::array<Unit, 4> kAllUnits = {Unit::kYear, Unit::kMonth,
                                                  Unit::kDay, Unit::kHour};

inline std::string_view UnitName(Unit u) {
  switch (u) {
    case Unit::kYear: return "year";
    case Unit::kMonth: return "month";
    case Unit::kDay: return "day";
    case Unit::kHour: return "hour";
  }
  return "?";
}

inline std::optional<Unit> ParseUnit(std::string_view s) {
  if (s == "year" || s == "years") return Unit::kYear;
  if (s == "month" || s == "months") return Unit::kMonth;
  if (s == "day" || s == "days") return Unit::kDay;
  if (s == "hour" || s == "hours") return Unit::kHour;
  return std::nullopt;
}

inline char UnitLetter(Unit u) { return "YMDH"[static_cast<int>(u)]; }

// One of exactly ten unit combinations. Instances can only be obtained
// from the enumerated constants, so no other combination exists.
class TimeFormat {
 public:
  enum class Id : uint8_t { Y, M, D, H, YM, MD, DH, YMD, MDH, YMDH };

  constexpr TimeFormat() : id_(Id::YMDH) {}
  constexpr explicit TimeFormat(Id id) : id_(id) {}

  static constexpr std::array<Id, 10> kAllIds = {
      Id::Y, Id::M, Id::D, Id::H, Id::YM, Id::MD, Id::DH, Id::YMD, Id::MDH,
      Id::YMDH};

  static std::vector<TimeFormat> All() {
    std::vector<TimeFormat> out;
    for (Id id : kAllIds) out.emplace_back(id);
    return out;
  }

  static std::optional<TimeFormat> Parse(std::string_view name) {
    for (Id id : kAllIds) {
      if (TimeFormat(id).Name() == name) return TimeFormat(id);
    }
    return std::nullopt;
  }

  static TimeFormat SingleUnit(Unit u) {
    switch (u) {
      case Unit::kYear: return TimeFormat(Id::Y);
      case Unit::kMonth: return TimeFormat(Id::M);
      case Unit::kDay: return TimeFormat(Id::D);
      case Unit::kHour: return TimeFormat(Id::H);
    }
    return TimeFormat(Id::Y);
  }

  Id id() const { return id_; }

  std::string Name() const {
    std::string name;
    for (Unit u : kAllUnits) {
      if (Has(u)) name += UnitLetter(u);
    }
    return name;
  }

  // Bit i set when unit i (year=0 .. hour=3) is present.
  uint8_t Mask() const {
    switch (id_) {
      case Id::Y: return 0b0001;
      case Id::M: return 0b0010;
      case Id::D: return 0b0100;
      case Id::H: return 0b1000;
      case Id::YM: return 0b0011;
      case Id::MD: return 0b0110;
      case Id::DH: return 0b1100;
      case Id::YMD: return 0b0111;
      case Id::MDH: return 0b1110;
      case Id::YMDH: return 0b1111;
    }
    return 0;
  }

  bool Has(Unit u) const { return (Mask() >> static_cast<int>(u)) & 1; }

  Unit Smallest() const {
    for (int i = 3; i >= 0; --i) {
      if (Has(static_cast<Unit>(i))) return static_cast<Unit>(i);
    }
    return Unit::kHour;
  }

  Unit Largest() const {
    for (int i = 0; i < 4; ++i) {
      if (Has(static_cast<Unit>(i))) return static_cast<Unit>(i);
    }
    return Unit::kYear;
  }

  std::vector<Unit> Units() const {
    std::vector<Unit> out;
    for (Unit u : kAllUnits) {
      if (Has(u)) out.push_back(u);
    }
    return out;
  }

  friend bool operator==(TimeFormat a, TimeFormat b) { return a.id_ == b.id_; }
  friend bool operator<(TimeFormat a, TimeFormat b) { return a.id_ < b.id_; }

 private:
  Id id_;
};

// ---------------------------------------------------------------------------
// Proleptic Gregorian calendar.

inline bool IsLeapYear(int64_t y) {
  return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

inline int DaysInMonth(int64_t y, int m) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30,
                                                31, 31, 30, 31, 30, 31};
  if (m == 2 && IsLeapYear(y)) return 29;
  return kDays[m - 1];
}

// Days since 1970-01-01 (H. Hinnant's days_from_civil).
inline int64_t DaysFromCivil(int64_t y, int m, int d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const int64_t yoe = y - era * 400;
  const int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

struct CivilDate {
  int64_t year;
  int month;
  int day;
};

inline CivilDate CivilFromDays(int64_t z) {
  z += 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const int64_t doe = z - era * 146097;
  const int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const int64_t mp = (5 * doy + 2) / 153;
  const int d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  const int m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  return {era * 400 + yoe + (m <= 2), m, d};
}

enum class Weekday : uint8_t {
  kSunday = 0,
  kMonday,
  kTuesday,
  kWednesday,
  kThursday,
  kFriday,
  kSaturday
};

inline std::string_view WeekdayName(Weekday w) {
  static constexpr std::array<std::string_view, 7> kNames = {
      "Sunday", "Monday", "Tuesday", "Wednesday",
      "Thursday", "Friday", "Saturday"};
  return kNames[static_cast<int>(w)];
}

inline std::optional<Weekday> ParseWeekday(std::string_view s) {
  for (int i = 0; i < 7; ++i) {
    if (WeekdayName(static_cast<Weekday>(i)) == s) return static_cast<Weekday>(i);
  }
  return std::nullopt;
}

// A calendar instant at hour precision.
struct TimePoint {
  int64_t year = 2000;
  int month = 1;
  int day = 1;
  int hour = 0;

  static TimePoint FromHours(int64_t hours_since_epoch) {
    int64_t days = hours_since_epoch / 24;
    int64_t hour = hours_since_epoch % 24;
    if (hour < 0) {
      hour += 24;
      --days;
    }
    const CivilDate c = CivilFromDays(days);
    return {c.year, c.month, c.day, static_cast<int>(hour)};
  }

  int64_t ToHours() const { return DaysFromCivil(year, month, day) * 24 + hour; }
  int64_t ToDays() const { return DaysFromCivil(year, month, day); }

  bool IsValid() const {
    return month >= 1 && month <= 12 && day >= 1 &&
           day <= DaysInMonth(year, month) && hour >= 0 && hour <= 23;
  }

  auto operator<=>(const TimePoint&) const = default;
};

// The sampling window: [2000-01-01 00:00, 2021-01-01 00:00). The nominal
// end "2020-12-31 24:00" is the exclusive bound.
inline constexpr TimePoint kWindowStart{2000, 1, 1, 0};
inline constexpr TimePoint kWindowEnd{2021, 1, 1, 0};

inline Weekday DayOfWeek(const TimePoint& tp) {
  // 1970-01-01 was a Thursday.
  int64_t w = (tp.ToDays() + 4) % 7;
  if (w < 0) w += 7;
  return static_cast<Weekday>(w);
}

inline TimePoint ShiftDays(const TimePoint& tp, int64_t n) {
  const CivilDate c = CivilFromDays(tp.ToDays() + n);
  return {c.year, c.month, c.day, tp.hour};
}

// Signed single-unit duration. Sampled intervals have magnitude >= 1;
// differences of time points may be zero or negative.
struct IntervalValue {
  int64_t magnitude = 1;
  Unit unit = Unit::kYear;

  bool operator==(const IntervalValue&) const = default;
};

enum class SpanMode : uint8_t { kRandom, kShort };

inline std::string_view SpanName(SpanMode s) {
  return s == SpanMode::kShort ? "short" : "random";
}

inline std::optional<SpanMode> ParseSpan(std::string_view s) {
  if (s == "random") return SpanMode::kRandom;
  if (s == "short") return SpanMode::kShort;
  return std::nullopt;
}

// A time point projected onto a format's units. Components outside the
// format are stored as zero so that defaulted equality is component-wise.
struct TruncatedTimePoint {
  TimeFormat format;
  int64_t year = 0;
  int month = 0;
  int day = 0;
  int hour = 0;

  bool operator==(const TruncatedTimePoint&) const = default;

  int64_t Component(Unit u) const {
    switch (u) {
      case Unit::kYear: return year;
      case Unit::kMonth: return month;
      case Unit::kDay: return day;
      case Unit::kHour: return hour;
    }
    return 0;
  }

  // Earliest instant consistent with the retained components.
  TimePoint Snap() const {
    return {format.Has(Unit::kYear) ? year : kWindowStart.year,
            format.Has(Unit::kMonth) ? month : 1,
            format.Has(Unit::kDay) ? day : 1,
            format.Has(Unit::kHour) ? hour : 0};
  }

  // Whether the components form a value some instant truncates to.
  bool IsValid() const {
    if (format.Has(Unit::kMonth) && (month < 1 || month > 12)) return false;
    if (format.Has(Unit::kHour) && (hour < 0 || hour > 23)) return false;
    if (format.Has(Unit::kYear) && year < 1) return false;
    if (format.Has(Unit::kDay)) {
      int max_day = 31;
      if (format.Has(Unit::kMonth)) {
        max_day = format.Has(Unit::kYear) ? DaysInMonth(year, month)
                                          : DaysInMonth(2000, month);
      }
      if (day < 1 || day > max_day) return false;
    }
    return true;
  }
};

inline TruncatedTimePoint Truncate(const TimePoint& tp, TimeFormat format) {
  TruncatedTimePoint t;
  t.format = format;
  if (format.Has(Unit::kYear)) t.year = tp.year;
  if (format.Has(Unit::kMonth)) t.month = tp.month;
  if (format.Has(Unit::kDay)) t.day = tp.day;
  if (format.Has(Unit::kHour)) t.hour = tp.hour;
  return t;
}

inline void RequireSameFormat(const TruncatedTimePoint& a,
                              const TruncatedTimePoint& b) {
  if (!(a.format == b.format)) {
    throw TemporalError("format mismatch: " + a.format.Name() + " vs " +
                        b.format.Name());
  }
}

// Lexicographic over (year, month, day, hour) restricted to the format.
inline std::strong_ordering Compare(const TruncatedTimePoint& a,
                                    const TruncatedTimePoint& b) {
  RequireSameFormat(a, b);
  return std::tie(a.year, a.month, a.day, a.hour) <=>
         std::tie(b.year, b.month, b.day, b.hour);
}

// a - b, counted in the format's smallest unit.
inline int64_t Diff(const TruncatedTimePoint& a, const TruncatedTimePoint& b) {
  RequireSameFormat(a, b);
  const TimePoint sa = a.Snap();
  const TimePoint sb = b.Snap();
  switch (a.format.Smallest()) {
    case Unit::kYear: return sa.year - sb.year;
    case Unit::kMonth:
      return (sa.year * 12 + sa.month) - (sb.year * 12 + sb.month);
    case Unit::kDay: return sa.ToDays() - sb.ToDays();
    case Unit::kHour: return sa.ToHours() - sb.ToHours();
  }
  return 0;
}

// Result of calendar arithmetic. `clamped` is set when a month/year step
// landed on a day past the end of the month (Jan 31 + 1 month); `overflow`
// is set when the step carried into a unit the format does not show
// (Dec + 1 month in format M). Either makes the result ambiguous text.
struct AddResult {
  TruncatedTimePoint value;
  bool clamped = false;
  bool overflow = false;

  bool adjusted() const { return clamped || overflow; }
};

// Calendar step on an instant. Month and year steps clamp the day.
inline TimePoint AddToInstant(const TimePoint& tp, IntervalValue iv,
                              bool* clamped = nullptr) {
  TimePoint out = tp;
  switch (iv.unit) {
    case Unit::kYear:
    case Unit::kMonth: {
      const int64_t months = iv.unit == Unit::kYear ? iv.magnitude * 12
                                                    : iv.magnitude;
      int64_t total = tp.year * 12 + (tp.month - 1) + months;
      int64_t y = total / 12;
      int64_t m0 = total % 12;
      if (m0 < 0) {
        m0 += 12;
        --y;
      }
      out.year = y;
      out.month = static_cast<int>(m0) + 1;
      const int dim = DaysInMonth(out.year, out.month);
      if (out.day > dim) {
        out.day = dim;
        if (clamped) *clamped = true;
      }
      return out;
    }
    case Unit::kDay: return ShiftDays(tp, iv.magnitude);
    case Unit::kHour: return TimePoint::FromHours(tp.ToHours() + iv.magnitude);
  }
  return out;
}

inline AddResult Add(const TruncatedTimePoint& a, IntervalValue iv) {
  if (!a.format.Has(iv.unit)) {
    throw TemporalError("cannot add " + std::string(UnitName(iv.unit)) +
                        " interval to a " + a.format.Name() + " time point");
  }
  AddResult r;
  const TimePoint base = a.Snap();
  const TimePoint moved = AddToInstant(base, iv, &r.clamped);
  // Carry into an absent unit above the format's largest unit.
  const Unit largest = a.format.Largest();
  if (largest != Unit::kYear && moved.year != base.year) r.overflow = true;
  if ((largest == Unit::kDay || largest == Unit::kHour) &&
      moved.month != base.month) {
    r.overflow = true;
  }
  if (largest == Unit::kHour && moved.day != base.day) r.overflow = true;
  r.value = Truncate(moved, a.format);
  return r;
}

inline AddResult Subtract(const TruncatedTimePoint& a, IntervalValue iv) {
  iv.magnitude = -iv.magnitude;
  return Add(a, iv);
}

// ---------------------------------------------------------------------------
// Sampling.

// Uniform over the whole hours of the sampling window.
inline TimePoint SampleTimePoint(Rng& rng) {
  const int64_t lo = kWindowStart.ToHours();
  const int64_t hi = kWindowEnd.ToHours() - 1;
  return TimePoint::FromHours(rng.UniformInt(lo, hi));
}

// Short-span window: one third of the unit above the format's smallest
// unit (hour -> 8 hours, day -> 10 days, month -> 4 months).
inline IntervalValue ShortWindow(TimeFormat format) {
  switch (format.Smallest()) {
    case Unit::kHour: return {8, Unit::kHour};
    case Unit::kDay: return {10, Unit::kDay};
    case Unit::kMonth: return {4, Unit::kMonth};
    case Unit::kYear: break;
  }
  throw TemporalError("short span undefined for year-only format");
}

// True when `a` and `b` agree on every unit above `format`'s largest unit,
// i.e. moving between them never carries into a unit the format hides.
inline bool SameHiddenPeriod(const TimePoint& a, const TimePoint& b,
                             TimeFormat format) {
  switch (format.Largest()) {
    case Unit::kYear: return true;
    case Unit::kMonth: return a.year == b.year;
    case Unit::kDay: return a.year == b.year && a.month == b.month;
    case Unit::kHour:
      return a.year == b.year && a.month == b.month && a.day == b.day;
  }
  return true;
}

// `count` points drawn uniformly from [B, B + W] for a uniformly chosen
// base B. The whole window lies inside the sampling window and inside one
// period of the largest hidden unit, and truncated gaps never exceed W.
inline std::vector<TimePoint> SampleTimePointsShort(TimeFormat format,
                                                    int count, Rng& rng) {
  if (count < 1) throw TemporalError("count must be >= 1");
  const IntervalValue window = ShortWindow(format);
  const int64_t lo = kWindowStart.ToHours();
  const int64_t last = kWindowEnd.ToHours() - 1;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const TimePoint base = TimePoint::FromHours(rng.UniformInt(lo, last));
    const TimePoint end = AddToInstant(base, window);
    const int64_t end_hours = end.ToHours();
    if (end_hours > last) continue;
    if (!SameHiddenPeriod(base, end, format)) continue;
    // Yearless formats snap to a leap year; keep the shown gap within W.
    if (Diff(Truncate(end, format), Truncate(base, format)) > window.magnitude) continue;
    std::vector<TimePoint> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
      out.push_back(
          TimePoint::FromHours(rng.UniformInt(base.ToHours(), end_hours)));
    }
    return out;
  }
  throw TemporalError("could not place a short-span window for format " +
                      format.Name());
}

inline IntervalValue SampleInterval(Unit unit, SpanMode mode, Rng& rng) {
  const int64_t hi = mode == SpanMode::kShort ? 3 : 9;
  return {rng.UniformInt(1, hi), unit};
}

// Every truncated value reachable from an instant in the sampling window,
// in ascending order.
inline std::vector<TruncatedTimePoint> EnumerateTruncations(TimeFormat format) {
  std::vector<TruncatedTimePoint> out;
  const bool y = format.Has(Unit::kYear), m = format.Has(Unit::kMonth),
             d = format.Has(Unit::kDay), h = format.Has(Unit::kHour);
  const int64_t y_lo = y ? kWindowStart.year : 0;
  const int64_t y_hi = y ? kWindowEnd.year - 1 : 0;
  for (int64_t yy = y_lo; yy <= y_hi; ++yy) {
    for (int mm = m ? 1 : 0; mm <= (m ? 12 : 0); ++mm) {
      int max_day = 31;
      if (m) max_day = y ? DaysInMonth(yy, mm) : DaysInMonth(2000, mm);
      for (int dd = d ? 1 : 0; dd <= (d ? max_day : 0); ++dd) {
        for (int hh = 0; hh <= (h ? 23 : 0); ++hh) {
          out.push_back({format, yy, mm, dd, hh});
        }
      }
    }
  }
  return out;
}

inline int64_t TruncationCount(TimeFormat format) {
  switch (format.id()) {
    case TimeFormat::Id::Y: return 21;
    case TimeFormat::Id::M: return 12;
    case TimeFormat::Id::D: return 31;
    case TimeFormat::Id::H: return 24;
    case TimeFormat::Id::YM: return 252;
    case TimeFormat::Id::MD: return 366;
    case TimeFormat::Id::DH: return 744;
    case TimeFormat::Id::YMD: return 7671;
    case TimeFormat::Id::MDH: return 8784;
    case TimeFormat::Id::YMDH: return 7671 * 24;
  }
  return 0;
}

}  // namespace tempoforge

#endif  // TEMPOFORGE_TEMPORAL_H_
