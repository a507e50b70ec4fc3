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

// Template packs.
//
//   # comment
//   [template interval_within]
//   main = Interval
//   sub = Comparison of two intervals
//   difficulty = basic
//   counterpart_of = <template id>         (optional)
//   formats = YMD,YMDH                     (optional restriction)
//   new_fragment = true                    (optional: fragment not in taxonomy)
//   P: {agent_1} が {interval_1} 以内 に {np_1@wo} を {vp_1:past} 。
//   H: {agent_1} は {interval_2} 以内 に {np_1@wo} を {vp_1:past} 。
//   G: if interval_1 <= interval_2 then Entailment
//      else Neutral
//
// Slots: {agent_K}, {np_K@case}, {vp_K:form}, {interval_K}, {timepoint_K},
// and {timepoint_K:dow} for the weekday of a time point. Equal (kind, K)
// co-refer. Nouns are case fillers of the lowest-numbered verb. A line
// starting with whitespace continues the previous G: line.

#ifndef TEMPOFORGE_TEMPLATE_H_
#define TEMPOFORGE_TEMPLATE_H_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tempoforge/condition.h"
#include "tempoforge/lexicon.h"
#include "tempoforge/temporal.h"
#include "tempoforge/util.h"

namespace tempoforge {

enum class SlotKind : uint8_t { kAgent, kNoun, kVerb, kInterval, kTimePoint };

inline std::string_view SlotKindName(SlotKind k) {
  switch (k) {
    case SlotKind::kAgent: return "agent";
    case SlotKind::kNoun: return "np";
    case SlotKind::kVerb: return "vp";
    case SlotKind::kInterval: return "interval";
    case SlotKind::kTimePoint: return "timepoint";
  }
  return "?";
}

struct Slot {
  SlotKind kind = SlotKind::kAgent;
  int index = 1;
  std::optional<CaseLabel> case_label;  // nouns
  std::optional<std::string> form;      // verbs
  bool weekday = false;                 // timepoint rendered as its weekday

  // "agent_1", "np_1": the co-reference key.
  std::string Key() const {
    return std::string(SlotKindName(kind)) + "_" + std::to_string(index);
  }
  // Source spelling, e.g. "{np_1@wo}".
  std::string Marker() const {
    std::string m = "{" + Key();
    if (case_label) m += "@" + std::string(CaseName(*case_label));
    if (form) m += ":" + *form;
    if (weekday) m += ":dow";
    return m + "}";
  }
  bool operator==(const Slot&) const = default;
};

using Segment = std::variant<std::string, Slot>;

struct Pattern {
  std::vector<Segment> segments;

  bool operator==(const Pattern&) const = default;

  std::string Text() const {
    std::string out;
    for (const auto& s : segments) {
      out += std::holds_alternative<std::string>(s) ? std::get<std::string>(s)
                                                    : std::get<Slot>(s).Marker();
    }
    return out;
  }
};

enum class Difficulty : uint8_t { kBasic, kChallenging };

inline std::string_view DifficultyName(Difficulty d) {
  return d == Difficulty::kBasic ? "basic" : "challenging";
}

inline std::optional<Difficulty> ParseDifficulty(std::string_view s) {
  if (s == "basic") return Difficulty::kBasic;
  if (s == "challenging") return Difficulty::kChallenging;
  return std::nullopt;
}

struct Template {
  std::string id;
  std::string main_fragment;
  std::string sub_fragment;
  Difficulty difficulty = Difficulty::kBasic;
  std::vector<Pattern> premises;
  Pattern hypothesis;
  ConditionAst condition;
  std::optional<std::string> counterpart_of;
  std::vector<TimeFormat> formats;  // empty: no restriction
  bool new_fragment = false;
  SourcePos pos;  // not part of equality

  bool operator==(const Template& o) const {
    return id == o.id && main_fragment == o.main_fragment &&
           sub_fragment == o.sub_fragment && difficulty == o.difficulty &&
           premises == o.premises && hypothesis == o.hypothesis &&
           condition == o.condition && counterpart_of == o.counterpart_of &&
           formats == o.formats && new_fragment == o.new_fragment;
  }

  template <typename Fn>
  void ForEachSlot(Fn&& fn) const {
    auto visit = [&](const Pattern& p) {
      for (const auto& s : p.segments) {
        if (std::holds_alternative<Slot>(s)) fn(std::get<Slot>(s));
      }
    };
    for (const auto& p : premises) visit(p);
    visit(hypothesis);
  }
};

// Slot inventory of a template.
struct SlotProfile {
  std::set<int> agents;
  std::map<int, CaseLabel> nouns;
  std::map<int, std::set<std::string>> verbs;  // index -> forms used
  std::set<int> timepoints;
  std::set<int> intervals;
  bool weekday_render = false;

  bool HasTemporal() const { return !timepoints.empty() || !intervals.empty(); }

  std::set<TemporalSlotRef> TemporalRefs() const {
    std::set<TemporalSlotRef> out;
    for (int i : timepoints) out.insert({TemporalKind::kTimePoint, i});
    for (int i : intervals) out.insert({TemporalKind::kInterval, i});
    return out;
  }
};

inline SlotProfile ProfileOf(const Template& t) {
  SlotProfile p;
  t.ForEachSlot([&](const Slot& s) {
    switch (s.kind) {
      case SlotKind::kAgent: p.agents.insert(s.index); break;
      case SlotKind::kNoun: p.nouns.emplace(s.index, *s.case_label); break;
      case SlotKind::kVerb: p.verbs[s.index].insert(*s.form); break;
      case SlotKind::kInterval: p.intervals.insert(s.index); break;
      case SlotKind::kTimePoint:
        p.timepoints.insert(s.index);
        p.weekday_render |= s.weekday;
        break;
    }
  });
  return p;
}

// One admissible (format, interval unit) pairing for a problem. For
// templates without time points the format is the single-unit format of
// the interval unit; templates without temporal slots have no choice.
struct FormatChoice {
  TimeFormat format;
  std::vector<std::optional<Unit>> units;
};

inline bool ShowsFullDate(TimeFormat f) {
  return f.Has(Unit::kYear) && f.Has(Unit::kMonth) && f.Has(Unit::kDay);
}

inline std::vector<FormatChoice> CompatibleChoices(const Template& t,
                                                   const std::vector<TimeFormat>& allowed) {
  const SlotProfile p = ProfileOf(t);
  auto permitted = [&](TimeFormat f) {
    const bool in_allowed = std::find(allowed.begin(), allowed.end(), f) != allowed.end();
    const bool in_template =
        t.formats.empty() || std::find(t.formats.begin(), t.formats.end(), f) != t.formats.end();
    return in_allowed && in_template;
  };
  std::vector<FormatChoice> out;
  if (!p.timepoints.empty()) {
    for (TimeFormat f : TimeFormat::All()) {
      if (!permitted(f)) continue;
      if (p.weekday_render && !ShowsFullDate(f)) continue;
      FormatChoice choice{f, {}};
      if (p.intervals.empty()) {
        if (UnitsCompatible(t.condition, f, std::nullopt)) choice.units.push_back(std::nullopt);
      } else {
        for (Unit u : kAllUnits) {
          if (UnitsCompatible(t.condition, f, u)) choice.units.push_back(u);
        }
      }
      if (!choice.units.empty()) out.push_back(std::move(choice));
    }
  } else if (!p.intervals.empty()) {
    for (Unit u : kAllUnits) {
      const TimeFormat f = TimeFormat::SingleUnit(u);
      if (permitted(f) && UnitsCompatible(t.condition, f, u)) out.push_back({f, {u}});
    }
  }
  return out;
}

// Registry of tense fragments: (main, sub) pairs and the difficulties
// templates under them may carry.
class Taxonomy {
 public:
  struct Entry {
    std::string main;
    std::string sub;
    std::set<Difficulty> difficulties;
  };

  // Main and sub-tense fragments of the shipped classification.
  static Taxonomy Default() {
    Taxonomy t;
    const std::set<Difficulty> both = {Difficulty::kBasic, Difficulty::kChallenging};
    for (const auto& [m, s] : std::vector<std::pair<std::string, std::string>>{
             {"Temporal commonsense", "Usage of 現在 (now)"},
             {"Temporal ordering", "Continuity of state"},
             {"Temporal ordering", "Ordering relation"},
             {"Time point", "Mentioned time point"},
             {"Time point", "Unmentioned time point"},
             {"Temporal anaphora", "Reference resolution of 昨日 (yesterday)"},
             {"Interval", "Comparison of two intervals"},
             {"Interval", "Completion of eventuality"},
             {"Habituality", "Mentioned time point"},
             {"Habituality", "Unmentioned time point"},
             {"Habituality", "Negation"},
             {"Habituality", "Existential quantification"}}) {
      t.entries_.push_back({m, s, both});
    }
    return t;
  }

  // Lines: main <TAB> sub <TAB> difficulty, where difficulty is basic,
  // challenging, or a comma list of both.
  static Taxonomy Parse(std::string_view text) {
    Taxonomy t;
    int line_no = 0;
    for (const auto& raw : util::Lines(text)) {
      ++line_no;
      const auto line = util::Trim(raw);
      if (line.empty() || line[0] == '#') continue;
      const auto f = util::Split(line, '\t');
      if (f.size() != 3) throw ParseError("taxonomy rows need 3 tab-separated fields", line_no);
      Entry e{std::string(util::Trim(f[0])), std::string(util::Trim(f[1])), {}};
      for (const auto& d : util::Split(f[2], ',')) {
        auto parsed = ParseDifficulty(util::Trim(d));
        if (!parsed) throw ParseError("unknown difficulty '" + d + "'", line_no);
        e.difficulties.insert(*parsed);
      }
      t.entries_.push_back(std::move(e));
    }
    return t;
  }

  std::string Serialize() const {
    std::string out;
    for (const auto& e : entries_) {
      std::vector<std::string> d;
      for (Difficulty x : e.difficulties) d.emplace_back(DifficultyName(x));
      out += e.main + "\t" + e.sub + "\t" + util::Join(d, ",") + "\n";
    }
    return out;
  }

  const Entry* Find(std::string_view main, std::string_view sub) const {
    for (const auto& e : entries_) {
      if (e.main == main && e.sub == sub) return &e;
    }
    return nullptr;
  }

  void Register(Entry e) { entries_.push_back(std::move(e)); }

  const std::vector<Entry>& entries() const { return entries_; }

  std::set<std::string> Mains() const {
    std::set<std::string> out;
    for (const auto& e : entries_) out.insert(e.main);
    return out;
  }

 private:
  std::vector<Entry> entries_;
};

struct PackParseResult {
  std::vector<Template> templates;
  std::vector<Diagnostic> diagnostics;

  bool ok() const {
    return std::none_of(diagnostics.begin(), diagnostics.end(),
                        [](const Diagnostic& d) { return d.is_error(); });
  }
};

namespace template_internal {

inline std::optional<Slot> ParseSlot(std::string_view body, std::string& error) {
  Slot s;
  std::string_view name = body;
  std::string_view modifier;
  char sep = 0;
  if (auto at = body.find_first_of("@:"); at != std::string_view::npos) {
    sep = body[at];
    name = body.substr(0, at);
    modifier = body.substr(at + 1);
  }
  const auto underscore = name.rfind('_');
  if (underscore == std::string_view::npos) {
    error = "unknown slot kind '" + std::string(name) + "'";
    return std::nullopt;
  }
  const auto kind = name.substr(0, underscore);
  const auto index = util::ParseInt<int>(name.substr(underscore + 1));
  if (kind == "agent") s.kind = SlotKind::kAgent;
  else if (kind == "np") s.kind = SlotKind::kNoun;
  else if (kind == "vp") s.kind = SlotKind::kVerb;
  else if (kind == "interval") s.kind = SlotKind::kInterval;
  else if (kind == "timepoint") s.kind = SlotKind::kTimePoint;
  else {
    error = "unknown slot kind '" + std::string(kind) + "'";
    return std::nullopt;
  }
  if (!index || *index < 1) {
    error = "slot index must be a positive integer in '" + std::string(name) + "'";
    return std::nullopt;
  }
  s.index = *index;
  switch (s.kind) {
    case SlotKind::kNoun: {
      if (sep != '@') {
        error = "noun slot " + s.Key() + " needs a case (" + s.Key() + "@wo)";
        return std::nullopt;
      }
      auto c = ParseCase(modifier);
      if (!c) {
        error = "unknown case label '" + std::string(modifier) + "'";
        return std::nullopt;
      }
      s.case_label = c;
      break;
    }
    case SlotKind::kVerb:
      if (sep != ':' || !IsValidFormTag(modifier)) {
        error = "verb slot " + s.Key() + " needs a conjugation tag (" + s.Key() + ":past)";
        return std::nullopt;
      }
      s.form = std::string(modifier);
      break;
    case SlotKind::kTimePoint:
      if (sep == ':' && modifier == "dow") {
        s.weekday = true;
        break;
      }
      [[fallthrough]];
    case SlotKind::kAgent:
    case SlotKind::kInterval:
      if (sep != 0) {
        error = "slot " + s.Key() + " takes no modifier";
        return std::nullopt;
      }
      break;
  }
  return s;
}

inline Pattern ParsePattern(std::string_view text, SourcePos base,
                            const std::string& id, std::vector<Diagnostic>& diags) {
  Pattern p;
  std::string literal;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      const auto close = text.find('}', i);
      const SourcePos at{base.line, base.column + static_cast<int>(i)};
      if (close == std::string_view::npos) {
        diags.push_back({Diagnostic::Severity::kError, id, at, "unterminated slot"});
        return p;
      }
      std::string error;
      auto slot = ParseSlot(text.substr(i + 1, close - i - 1), error);
      if (!slot) {
        diags.push_back({Diagnostic::Severity::kError, id, at, error});
      } else {
        if (!literal.empty()) p.segments.emplace_back(std::move(literal));
        literal.clear();
        p.segments.emplace_back(*slot);
      }
      i = close + 1;
    } else if (text[i] == '}') {
      diags.push_back({Diagnostic::Severity::kError, id,
                       {base.line, base.column + static_cast<int>(i)}, "stray '}'"});
      ++i;
    } else {
      literal += text[i++];
    }
  }
  if (!literal.empty()) p.segments.emplace_back(std::move(literal));
  return p;
}

struct RawTemplate {
  std::string id;
  SourcePos pos;
  std::vector<std::pair<std::string, SourcePos>> premises;
  std::vector<std::pair<std::string, SourcePos>> hypotheses;
  std::vector<std::pair<std::string, SourcePos>> conditions;
  std::map<std::string, std::pair<std::string, SourcePos>> meta;
};

}  // namespace template_internal

// Parses a template pack, collecting every diagnostic rather than stopping
// at the first. Templates with errors are omitted from the result.
inline PackParseResult ParseTemplates(std::string_view text,
                                      const Taxonomy& taxonomy = Taxonomy::Default()) {
  using namespace template_internal;
  PackParseResult result;
  auto& diags = result.diagnostics;
  std::vector<RawTemplate> raws;
  int line_no = 0;
  for (const auto& raw_line : util::Lines(text)) {
    ++line_no;
    std::string_view line = raw_line;
    const auto trimmed = util::Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const bool continuation = line[0] == ' ' || line[0] == '\t';
    const int indent = static_cast<int>(line.size() - util::Trim(line).size() -
                                        (line.size() - line.find_last_not_of(" \t\r") - 1));
    if (continuation && !raws.empty() && !raws.back().conditions.empty()) {
      raws.back().conditions.back().first += " " + std::string(trimmed);
      continue;
    }
    if (util::StartsWith(trimmed, "[")) {
      const SourcePos at{line_no, indent + 1};
      if (!util::StartsWith(trimmed, "[template ") || !util::EndsWith(trimmed, "]")) {
        diags.push_back({Diagnostic::Severity::kError, "", at, "malformed header, expected [template <id>]"});
        continue;
      }
      RawTemplate r;
      r.id = std::string(util::Trim(trimmed.substr(10, trimmed.size() - 11)));
      r.pos = at;
      if (r.id.empty() || r.id.find_first_of(" \t") != std::string::npos) {
        diags.push_back({Diagnostic::Severity::kError, "", at, "template id must be one token"});
      }
      raws.push_back(std::move(r));
      continue;
    }
    if (raws.empty()) {
      diags.push_back({Diagnostic::Severity::kError, "", {line_no, indent + 1},
                       "content before the first [template] header"});
      continue;
    }
    auto& cur = raws.back();
    if (trimmed.size() >= 2 && trimmed[1] == ':' &&
        (trimmed[0] == 'P' || trimmed[0] == 'H' || trimmed[0] == 'G')) {
      std::string_view body = trimmed.substr(2);
      const size_t lead = body.size() - util::Trim(body).size() -
                          (body.size() - (body.find_last_not_of(" \t") + 1));
      body = util::Trim(body);
      const SourcePos at{line_no, indent + 3 + static_cast<int>(lead)};
      auto entry = std::make_pair(std::string(body), at);
      if (trimmed[0] == 'P') cur.premises.push_back(entry);
      else if (trimmed[0] == 'H') cur.hypotheses.push_back(entry);
      else cur.conditions.push_back(entry);
      continue;
    }
    const auto eq = trimmed.find('=');
    if (eq == std::string_view::npos) {
      diags.push_back({Diagnostic::Severity::kError, cur.id, {line_no, indent + 1},
                       "expected key = value, P:, H: or G:"});
      continue;
    }
    const std::string key(util::Trim(trimmed.substr(0, eq)));
    const std::string value(util::Trim(trimmed.substr(eq + 1)));
    if (cur.meta.count(key)) {
      diags.push_back({Diagnostic::Severity::kError, cur.id, {line_no, indent + 1},
                       "duplicate key '" + key + "'"});
    }
    cur.meta[key] = {value, {line_no, indent + 1}};
  }

  std::map<std::string, SourcePos> seen_ids;
  for (auto& r : raws) {
    const size_t before = diags.size();
    auto error = [&](SourcePos p, std::string m) {
      diags.push_back({Diagnostic::Severity::kError, r.id, p, std::move(m)});
    };
    if (auto it = seen_ids.find(r.id); it != seen_ids.end()) {
      error(r.pos, "duplicate template id (first defined at line " +
                       std::to_string(it->second.line) + ")");
    } else {
      seen_ids[r.id] = r.pos;
    }
    Template t;
    t.id = r.id;
    t.pos = r.pos;
    for (const auto& [key, vp] : r.meta) {
      const auto& [value, at] = vp;
      if (key == "main") t.main_fragment = value;
      else if (key == "sub") t.sub_fragment = value;
      else if (key == "difficulty") {
        auto d = ParseDifficulty(value);
        if (!d) error(at, "difficulty must be basic or challenging");
        else t.difficulty = *d;
      } else if (key == "counterpart_of") {
        t.counterpart_of = value;
      } else if (key == "formats") {
        for (const auto& name : util::Split(value, ',')) {
          auto f = TimeFormat::Parse(util::Trim(name));
          if (!f) error(at, "unknown time format '" + std::string(util::Trim(name)) + "'");
          else t.formats.push_back(*f);
        }
      } else if (key == "new_fragment") {
        if (value != "true" && value != "false") error(at, "new_fragment must be true or false");
        t.new_fragment = value == "true";
      } else {
        error(at, "unknown key '" + key + "'");
      }
    }
    if (!r.meta.count("main") || !r.meta.count("sub")) error(r.pos, "main and sub fragments are required");
    if (!r.meta.count("difficulty")) error(r.pos, "difficulty is required");
    if (r.premises.empty()) error(r.pos, "at least one premise (P:) is required");
    if (r.hypotheses.size() != 1) error(r.pos, "exactly one hypothesis (H:) is required");
    if (r.conditions.size() != 1) error(r.pos, "exactly one gold condition (G:) is required");
    if (!t.main_fragment.empty() && !t.sub_fragment.empty() && !t.new_fragment) {
      const auto* entry = taxonomy.Find(t.main_fragment, t.sub_fragment);
      if (!entry) {
        error(r.pos, "fragment '" + t.main_fragment + " / " + t.sub_fragment +
                         "' is not registered (set new_fragment = true to add it)");
      } else if (!entry->difficulties.count(t.difficulty)) {
        error(r.pos, "difficulty " + std::string(DifficultyName(t.difficulty)) +
                         " is not allowed for this fragment");
      }
    }
    for (const auto& [text, at] : r.premises) t.premises.push_back(ParsePattern(text, at, r.id, diags));
    if (!r.hypotheses.empty()) {
      t.hypothesis = ParsePattern(r.hypotheses[0].first, r.hypotheses[0].second, r.id, diags);
    }
    // Co-reference consistency: one case per noun index.
    std::map<int, CaseLabel> noun_case;
    t.ForEachSlot([&](const Slot& s) {
      if (s.kind != SlotKind::kNoun) return;
      auto [it, inserted] = noun_case.emplace(s.index, *s.case_label);
      if (!inserted && it->second != *s.case_label) {
        error(r.pos, "noun slot " + s.Key() + " used with two different cases");
      }
    });
    const SlotProfile profile = ProfileOf(t);
    std::set<int> plain_timepoints;
    t.ForEachSlot([&](const Slot& s) {
      if (s.kind == SlotKind::kTimePoint && !s.weekday) plain_timepoints.insert(s.index);
    });
    for (int idx : profile.timepoints) {
      if (!plain_timepoints.count(idx)) {
        error(r.pos, "timepoint_" + std::to_string(idx) +
                         " appears only as a weekday; show the date somewhere too");
      }
    }
    if (!profile.nouns.empty() && profile.verbs.empty()) {
      error(r.pos, "noun slots need a verb slot to attach to");
    }
    std::set<CaseLabel> cases_used;
    for (const auto& [idx, c] : profile.nouns) {
      if (!cases_used.insert(c).second) {
        error(r.pos, "two noun slots share case " + std::string(CaseName(c)));
      }
    }
    if (!r.conditions.empty()) {
      const auto& [text, at] = r.conditions[0];
      auto ast = ParseCondition(text, diags, at, r.id);
      if (ast) {
        t.condition = std::move(*ast);
        const auto type_diags = TypeCheck(t.condition, profile.TemporalRefs(), r.id);
        diags.insert(diags.end(), type_diags.begin(), type_diags.end());
        if (type_diags.empty() && profile.HasTemporal() &&
            CompatibleChoices(t, TimeFormat::All()).empty()) {
          error(at, "no time format and interval unit satisfy the condition's unit constraints");
        }
      }
    }
    const bool has_error = std::any_of(diags.begin() + before, diags.end(),
                                       [](const Diagnostic& d) { return d.is_error(); });
    if (!has_error) result.templates.push_back(std::move(t));
  }
  return result;
}

// Canonical text of a pack; ParseTemplates(FormatTemplates(x)) == x.
inline std::string FormatTemplates(const std::vector<Template>& templates) {
  std::string out;
  for (size_t i = 0; i < templates.size(); ++i) {
    const auto& t = templates[i];
    if (i) out += "\n";
    out += "[template " + t.id + "]\n";
    out += "main = " + t.main_fragment + "\n";
    out += "sub = " + t.sub_fragment + "\n";
    out += "difficulty = " + std::string(DifficultyName(t.difficulty)) + "\n";
    if (t.counterpart_of) out += "counterpart_of = " + *t.counterpart_of + "\n";
    if (!t.formats.empty()) {
      std::vector<std::string> names;
      for (auto f : t.formats) names.push_back(f.Name());
      out += "formats = " + util::Join(names, ",") + "\n";
    }
    if (t.new_fragment) out += "new_fragment = true\n";
    for (const auto& p : t.premises) out += "P: " + p.Text() + "\n";
    out += "H: " + t.hypothesis.Text() + "\n";
    out += "G: " + FormatCondition(t.condition) + "\n";
  }
  return out;
}

}  // namespace tempoforge

#endif  // TEMPOFORGE_TEMPLATE_H_
