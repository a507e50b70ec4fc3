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

// Surface forms of temporal values. A render table gives, per unit, the
// tokens placed before and after the number; output is space-segmented.
//
// Render table file (tab separated, '#' comments, '-' for an empty field):
//
//   order     Y M D H
//   point     <unit> <prefix> <suffix>
//   interval  <unit> <prefix> <suffix> [<plural suffix>]
//   month     <1-12> <name>
//   weekday   <0-6, 0 = Sunday> <name>
//
// A suffix starting with '~' is glued to the number ("~:00" -> "15:00").
// When month names are present, months render as the name alone.

#ifndef TEMPOFORGE_RENDER_H_
#define TEMPOFORGE_RENDER_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tempoforge/temporal.h"
#include "tempoforge/util.h"

namespace tempoforge {

class FormatMismatchError : public Error {
 public:
  using Error::Error;
};

struct Affix {
  std::vector<std::string> prefix;
  std::string glue;  // attached to the number without a space
  std::vector<std::string> suffix;
  std::string glue_plural;
  std::vector<std::string> suffix_plural;  // empty: same as singular
};

struct RenderTable {
  std::array<Affix, 4> point;
  std::array<Affix, 4> interval;
  std::array<std::string, 12> month_names;  // all empty: numeric months
  std::array<std::string, 7> weekday_names;
  std::vector<Unit> order = {Unit::kYear, Unit::kMonth, Unit::kDay, Unit::kHour};

  bool HasMonthNames() const { return !month_names[0].empty(); }

  static RenderTable Japanese();
  static RenderTable Latin();
  static RenderTable Parse(std::string_view text);
  std::string Serialize() const;
};

namespace render_internal {

inline void SetAffix(Affix& a, std::string_view prefix, std::string_view suffix,
                     std::string_view plural = {}) {
  a = Affix{};
  if (prefix != "-") a.prefix = util::SplitWhitespace(prefix);
  auto set_suffix = [](std::string_view s, std::string& glue,
                       std::vector<std::string>& tokens) {
    if (s.empty() || s == "-") return;
    auto parts = util::SplitWhitespace(s);
    if (!parts.empty() && util::StartsWith(parts.front(), "~")) {
      glue = parts.front().substr(1);
      parts.erase(parts.begin());
    }
    tokens = std::move(parts);
  };
  set_suffix(suffix, a.glue, a.suffix);
  set_suffix(plural, a.glue_plural, a.suffix_plural);
}

inline std::string AffixSuffixField(const std::string& glue,
                                    const std::vector<std::string>& tokens) {
  std::string out = glue.empty() ? "" : "~" + glue;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out.empty() ? "-" : out;
}

// Canonical non-negative decimal: no sign, no leading zeros.
inline std::optional<int64_t> ParseCanonicalNumber(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  if (s.size() > 1 && s[0] == '0') return std::nullopt;
  return util::ParseInt<int64_t>(s);
}

// Cursor over the tokens of a rendered string.
class TokenCursor {
 public:
  explicit TokenCursor(std::string_view s) : tokens_(util::Split(s, ' ')) {
    for (const auto& t : tokens_) {
      if (t.empty()) throw FormatMismatchError("irregular spacing");
    }
  }
  bool Expect(const std::vector<std::string>& literal) {
    for (const auto& t : literal) {
      if (pos_ >= tokens_.size() || tokens_[pos_] != t) return false;
      ++pos_;
    }
    return true;
  }
  std::optional<std::string> Take() {
    if (pos_ >= tokens_.size()) return std::nullopt;
    return tokens_[pos_++];
  }
  bool Done() const { return pos_ == tokens_.size(); }

 private:
  std::vector<std::string> tokens_;
  size_t pos_ = 0;
};

inline std::optional<int64_t> TakeNumber(TokenCursor& cur,
                                         const std::string& glue) {
  auto tok = cur.Take();
  if (!tok) return std::nullopt;
  std::string_view s = *tok;
  if (!glue.empty()) {
    if (!util::EndsWith(s, glue)) return std::nullopt;
    s.remove_suffix(glue.size());
  }
  return ParseCanonicalNumber(s);
}

}  // namespace render_internal

inline RenderTable RenderTable::Japanese() {
  using render_internal::SetAffix;
  RenderTable t;
  SetAffix(t.point[0], "-", "年");
  SetAffix(t.point[1], "-", "月");
  SetAffix(t.point[2], "-", "日");
  SetAffix(t.point[3], "-", "時");
  SetAffix(t.interval[0], "-", "年間");
  SetAffix(t.interval[1], "-", "ヶ月");
  SetAffix(t.interval[2], "-", "日間");
  SetAffix(t.interval[3], "-", "時間");
  t.weekday_names = {"日曜日", "月曜日", "火曜日", "水曜日",
                     "木曜日", "金曜日", "土曜日"};
  return t;
}

inline RenderTable RenderTable::Latin() {
  using render_internal::SetAffix;
  RenderTable t;
  t.order = {Unit::kMonth, Unit::kDay, Unit::kYear, Unit::kHour};
  SetAffix(t.point[0], "-", "-");
  SetAffix(t.point[1], "-", "-");
  SetAffix(t.point[2], "-", "-");
  SetAffix(t.point[3], "at", "~:00");
  SetAffix(t.interval[0], "-", "year", "years");
  SetAffix(t.interval[1], "-", "month", "months");
  SetAffix(t.interval[2], "-", "day", "days");
  SetAffix(t.interval[3], "-", "hour", "hours");
  t.month_names = {"January", "February", "March",     "April",
                   "May",     "June",     "July",      "August",
                   "September", "October", "November", "December"};
  for (int i = 0; i < 7; ++i) {
    t.weekday_names[i] = std::string(WeekdayName(static_cast<Weekday>(i)));
  }
  return t;
}

inline RenderTable RenderTable::Parse(std::string_view text) {
  using render_internal::SetAffix;
  RenderTable t;
  int line_no = 0;
  bool saw_order = false;
  for (const auto& raw : util::Lines(text)) {
    ++line_no;
    const auto line = util::Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto f = util::Split(line, '\t');
    const std::string& kind = f[0];
    if (kind == "order") {
      if (f.size() != 2) throw ParseError("order takes one field", line_no);
      t.order.clear();
      for (const auto& tok : util::SplitWhitespace(f[1])) {
        if (tok.size() != 1 || std::string("YMDH").find(tok[0]) == std::string::npos) {
          throw ParseError("bad unit letter in order: " + tok, line_no);
        }
        t.order.push_back(static_cast<Unit>(std::string("YMDH").find(tok[0])));
      }
      if (t.order.size() != 4) throw ParseError("order must list Y M D H", line_no);
      saw_order = true;
    } else if (kind == "point" || kind == "interval") {
      if (f.size() < 4 || f.size() > 5) {
        throw ParseError(kind + " takes <unit> <prefix> <suffix> [<plural>]",
                         line_no);
      }
      const auto unit = ParseUnit(f[1]);
      if (!unit) throw ParseError("unknown unit " + f[1], line_no);
      auto& slot = kind == "point" ? t.point[static_cast<int>(*unit)]
                                   : t.interval[static_cast<int>(*unit)];
      SetAffix(slot, f[2], f[3], f.size() == 5 ? std::string_view(f[4])
                                               : std::string_view());
    } else if (kind == "month" || kind == "weekday") {
      if (f.size() != 3) throw ParseError(kind + " takes <index> <name>", line_no);
      const auto idx = util::ParseInt<int>(f[1]);
      const int lo = kind == "month" ? 1 : 0;
      const int hi = kind == "month" ? 12 : 6;
      if (!idx || *idx < lo || *idx > hi) {
        throw ParseError("bad " + kind + " index " + f[1], line_no);
      }
      if (kind == "month") {
        t.month_names[*idx - 1] = f[2];
      } else {
        t.weekday_names[*idx] = f[2];
      }
    } else {
      throw ParseError("unknown render table entry '" + kind + "'", line_no);
    }
  }
  (void)saw_order;
  const bool any_month = t.HasMonthNames();
  for (const auto& m : t.month_names) {
    if (any_month && m.empty()) throw ParseError("incomplete month names");
  }
  for (const auto& w : t.weekday_names) {
    if (w.empty()) throw ParseError("all seven weekday names are required");
  }
  return t;
}

inline std::string RenderTable::Serialize() const {
  using render_internal::AffixSuffixField;
  std::string out = "order\t";
  for (size_t i = 0; i < order.size(); ++i) {
    if (i) out += ' ';
    out += UnitLetter(order[i]);
  }
  out += '\n';
  auto prefix_field = [](const Affix& a) {
    return a.prefix.empty() ? std::string("-") : util::Join(a.prefix, " ");
  };
  for (Unit u : kAllUnits) {
    const Affix& a = point[static_cast<int>(u)];
    out += "point\t" + std::string(UnitName(u)) + '\t' + prefix_field(a) +
           '\t' + AffixSuffixField(a.glue, a.suffix) + '\n';
  }
  for (Unit u : kAllUnits) {
    const Affix& a = interval[static_cast<int>(u)];
    out += "interval\t" + std::string(UnitName(u)) + '\t' + prefix_field(a) +
           '\t' + AffixSuffixField(a.glue, a.suffix);
    if (!a.glue_plural.empty() || !a.suffix_plural.empty()) {
      out += '\t' + AffixSuffixField(a.glue_plural, a.suffix_plural);
    }
    out += '\n';
  }
  if (HasMonthNames()) {
    for (int i = 0; i < 12; ++i) {
      out += "month\t" + std::to_string(i + 1) + '\t' + month_names[i] + '\n';
    }
  }
  for (int i = 0; i < 7; ++i) {
    out += "weekday\t" + std::to_string(i) + '\t' + weekday_names[i] + '\n';
  }
  return out;
}

inline std::string Render(const TruncatedTimePoint& tp, const RenderTable& table) {
  std::vector<std::string> tokens;
  for (Unit u : table.order) {
    if (!tp.format.Has(u)) continue;
    const Affix& a = table.point[static_cast<int>(u)];
    tokens.insert(tokens.end(), a.prefix.begin(), a.prefix.end());
    if (u == Unit::kMonth && table.HasMonthNames()) {
      tokens.push_back(table.month_names[tp.month - 1]);
    } else {
      tokens.push_back(std::to_string(tp.Component(u)) + a.glue);
    }
    tokens.insert(tokens.end(), a.suffix.begin(), a.suffix.end());
  }
  return util::Join(tokens, " ");
}

inline std::string Render(const IntervalValue& iv, const RenderTable& table) {
  const Affix& a = table.interval[static_cast<int>(iv.unit)];
  const bool plural = iv.magnitude != 1 &&
                      (!a.suffix_plural.empty() || !a.glue_plural.empty());
  std::vector<std::string> tokens = a.prefix;
  tokens.push_back(std::to_string(iv.magnitude) +
                   (plural ? a.glue_plural : a.glue));
  const auto& suffix = plural ? a.suffix_plural : a.suffix;
  tokens.insert(tokens.end(), suffix.begin(), suffix.end());
  return util::Join(tokens, " ");
}

inline std::string RenderWeekday(Weekday w, const RenderTable& table) {
  return table.weekday_names[static_cast<int>(w)];
}

// Inverse of Render for a known format. Only canonical renderings parse.
inline TruncatedTimePoint ParseRendered(std::string_view s, TimeFormat format,
                                        const RenderTable& table) {
  using namespace render_internal;
  auto fail = [&]() -> FormatMismatchError {
    return FormatMismatchError("'" + std::string(s) + "' is not a " +
                               format.Name() + " time point");
  };
  TokenCursor cur(s);
  TruncatedTimePoint tp;
  tp.format = format;
  for (Unit u : table.order) {
    if (!format.Has(u)) continue;
    const Affix& a = table.point[static_cast<int>(u)];
    if (!cur.Expect(a.prefix)) throw fail();
    int64_t value = 0;
    if (u == Unit::kMonth && table.HasMonthNames()) {
      auto tok = cur.Take();
      if (!tok) throw fail();
      int found = 0;
      for (int i = 0; i < 12; ++i) {
        if (table.month_names[i] == *tok) found = i + 1;
      }
      if (!found) throw fail();
      value = found;
    } else {
      auto n = TakeNumber(cur, a.glue);
      if (!n) throw fail();
      value = *n;
    }
    if (!cur.Expect(a.suffix)) throw fail();
    switch (u) {
      case Unit::kYear: tp.year = value; break;
      case Unit::kMonth: tp.month = static_cast<int>(value); break;
      case Unit::kDay: tp.day = static_cast<int>(value); break;
      case Unit::kHour: tp.hour = static_cast<int>(value); break;
    }
  }
  if (!cur.Done() || !tp.IsValid()) throw fail();
  return tp;
}

// Inverse of Render for intervals; the unit is recovered from the affixes
// and must be unambiguous.
inline IntervalValue ParseRenderedInterval(std::string_view s,
                                           const RenderTable& table) {
  using namespace render_internal;
  std::optional<IntervalValue> match;
  for (Unit u : kAllUnits) {
    const Affix& a = table.interval[static_cast<int>(u)];
    for (int plural = 0; plural < 2; ++plural) {
      const auto& glue = plural ? a.glue_plural : a.glue;
      const auto& suffix = plural ? a.suffix_plural : a.suffix;
      if (plural && glue.empty() && suffix.empty()) continue;
      TokenCursor cur(s);
      if (!cur.Expect(a.prefix)) continue;
      auto n = TakeNumber(cur, glue);
      if (!n || *n < 1 || !cur.Expect(suffix) || !cur.Done()) continue;
      IntervalValue iv{*n, u};
      if (Render(iv, table) != s) continue;  // wrong number agreement
      if (match && !(*match == iv)) {
        throw FormatMismatchError("ambiguous interval '" + std::string(s) + "'");
      }
      match = iv;
    }
  }
  if (!match) {
    throw FormatMismatchError("'" + std::string(s) + "' is not an interval");
  }
  return *match;
}

inline std::optional<Weekday> ParseRenderedWeekday(std::string_view s,
                                                   const RenderTable& table) {
  for (int i = 0; i < 7; ++i) {
    if (table.weekday_names[i] == s) return static_cast<Weekday>(i);
  }
  return std::nullopt;
}

}  // namespace tempoforge

#endif  // TEMPOFORGE_RENDER_H_
