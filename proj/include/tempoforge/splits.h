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

// Controlled train/test splits and seen/unseen scoring.
//
// Manifest:
//   axis = fragment | format | span | iid
//   variant = easy | hard | n/a
//   train = <key>,<key>,...
//   test = <key>,...
// Keys: fragment "main|sub|difficulty", format "YMD", span "random", iid
// "all". '*' matches any value (per '|' component for fragment keys).

#ifndef TEMPOFORGE_SPLITS_H_
#define TEMPOFORGE_SPLITS_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tempoforge/condition.h"
#include "tempoforge/generator.h"
#include "tempoforge/util.h"

namespace tempoforge {

enum class SplitAxis : uint8_t { kFragment, kFormat, kSpan, kIid };

inline std::string_view AxisName(SplitAxis a) {
  switch (a) {
    case SplitAxis::kFragment: return "fragment";
    case SplitAxis::kFormat: return "format";
    case SplitAxis::kSpan: return "span";
    case SplitAxis::kIid: return "iid";
  }
  return "?";
}

inline std::optional<SplitAxis> ParseAxis(std::string_view s) {
  for (auto a : {SplitAxis::kFragment, SplitAxis::kFormat, SplitAxis::kSpan, SplitAxis::kIid}) {
    if (AxisName(a) == s) return a;
  }
  return std::nullopt;
}

struct SplitManifest {
  SplitAxis axis = SplitAxis::kIid;
  std::string variant = "n/a";
  std::vector<std::string> train;
  std::vector<std::string> test;

  bool operator==(const SplitManifest&) const = default;
};

class SplitError : public Error {
 public:
  using Error::Error;
};

// Axis key of a problem; nullopt when the problem has no value on the axis
// (no time points or intervals for format and span).
inline std::optional<std::string> PatternKey(const Problem& p, SplitAxis axis) {
  switch (axis) {
    case SplitAxis::kFragment:
      return p.main_fragment + "|" + p.sub_fragment + "|" + std::string(DifficultyName(p.difficulty));
    case SplitAxis::kFormat:
      if (!p.time_format) return std::nullopt;
      return p.time_format->Name();
    case SplitAxis::kSpan:
      if (!p.span) return std::nullopt;
      return std::string(SpanName(*p.span));
    case SplitAxis::kIid: return "all";
  }
  return std::nullopt;
}

inline bool KeyMatches(std::string_view pattern, std::string_view key, SplitAxis axis) {
  if (pattern == "*") return true;
  if (axis != SplitAxis::kFragment) return pattern == key;
  const auto pc = util::Split(pattern, '|');
  const auto kc = util::Split(key, '|');
  if (pc.size() != kc.size()) return false;
  for (size_t i = 0; i < pc.size(); ++i) {
    if (pc[i] != "*" && pc[i] != kc[i]) return false;
  }
  return true;
}

inline bool AnyMatches(const std::vector<std::string>& patterns, std::string_view key,
                       SplitAxis axis) {
  return std::any_of(patterns.begin(), patterns.end(),
                     [&](const std::string& p) { return KeyMatches(p, key, axis); });
}

inline SplitManifest ParseManifest(std::string_view text) {
  SplitManifest m;
  bool have_axis = false;
  int line_no = 0;
  for (const auto& raw : util::Lines(text)) {
    ++line_no;
    const auto line = util::Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no);
    const auto key = util::Trim(line.substr(0, eq));
    const auto value = util::Trim(line.substr(eq + 1));
    auto list = [&]() {
      std::vector<std::string> out;
      for (const auto& item : util::Split(value, ',')) {
        const auto t = util::Trim(item);
        if (!t.empty()) out.emplace_back(t);
      }
      return out;
    };
    if (key == "axis") {
      auto a = ParseAxis(value);
      if (!a) throw ParseError("unknown axis '" + std::string(value) + "'", line_no);
      m.axis = *a;
      have_axis = true;
    } else if (key == "variant") {
      m.variant = std::string(value);
    } else if (key == "train") {
      m.train = list();
    } else if (key == "test") {
      m.test = list();
    } else {
      throw ParseError("unknown manifest key '" + std::string(key) + "'", line_no);
    }
  }
  if (!have_axis) throw ParseError("manifest needs axis =", line_no);
  return m;
}

inline std::string FormatManifest(const SplitManifest& m) {
  return "axis = " + std::string(AxisName(m.axis)) + "\nvariant = " + m.variant +
         "\ntrain = " + util::Join(m.train, ",") + "\ntest = " + util::Join(m.test, ",") + "\n";
}

// Axis invariants; throws SplitError before anything is written.
inline void CheckManifest(const SplitManifest& m) {
  if (m.train.empty()) throw SplitError("manifest has no train patterns");
  auto within = [&](const std::set<std::string>& allowed, const std::string& what) {
    for (const auto& p : m.train) {
      if (!allowed.count(p)) throw SplitError(what + " train pattern '" + p + "' not allowed");
    }
  };
  switch (m.axis) {
    case SplitAxis::kFragment:
      for (const auto& p : m.train) {
        const auto c = util::Split(p, '|');
        if (c.size() != 3 || c[2] != "basic") {
          throw SplitError("fragment train pattern '" + p + "' must end in |basic");
        }
      }
      break;
    case SplitAxis::kFormat:
      if (m.variant == "hard") within({"Y", "M", "D", "H"}, "format_hard");
      else if (m.variant == "easy") within({"Y", "M", "D", "H", "YM", "MD", "DH"}, "format_easy");
      else throw SplitError("format manifests need variant easy or hard");
      break;
    case SplitAxis::kSpan:
      if (m.train != std::vector<std::string>{"random"}) {
        throw SplitError("span train patterns must be exactly {random}");
      }
      break;
    case SplitAxis::kIid: break;
  }
}

inline const std::vector<std::string>& PresetNames() {
  static const std::vector<std::string> names = {"fragment_easy", "fragment_hard", "format_easy",
                                                 "format_hard",   "span",          "iid"};
  return names;
}

inline SplitManifest Preset(std::string_view name) {
  if (name == "fragment_easy") return {SplitAxis::kFragment, "easy", {"*|*|basic"}, {"*"}};
  if (name == "fragment_hard") {
    return {SplitAxis::kFragment,
            "hard",
            {"Temporal ordering|*|basic", "Interval|*|basic", "Time point|*|basic"},
            {"*"}};
  }
  if (name == "format_hard") return {SplitAxis::kFormat, "hard", {"Y", "M", "D", "H"}, {"*"}};
  if (name == "format_easy") {
    return {SplitAxis::kFormat, "easy", {"Y", "M", "D", "H", "YM", "MD", "DH"}, {"*"}};
  }
  if (name == "span") return {SplitAxis::kSpan, "n/a", {"random"}, {"*"}};
  if (name == "iid") return {SplitAxis::kIid, "n/a", {"*"}, {"*"}};
  throw SplitError("unknown preset '" + std::string(name) + "'");
}

struct TestItem {
  Problem problem;
  bool seen = false;
};

struct SplitResult {
  std::vector<Problem> train;
  std::vector<TestItem> test;
  int64_t without_key = 0;  // problems with no value on the axis
  // side -> key -> count
  std::map<std::string, std::map<std::string, int64_t>> summary;
};

inline SplitResult BuildSplit(const std::vector<Problem>& problems, const SplitManifest& m) {
  CheckManifest(m);
  SplitResult r;
  std::set<std::string> train_keys;
  std::set<std::string> stray;
  for (const auto& p : problems) {
    const auto key = PatternKey(p, m.axis);
    if (!key) {
      ++r.without_key;
      continue;
    }
    if (p.pool == Pool::kTrain) {
      if (AnyMatches(m.train, *key, m.axis)) {
        r.train.push_back(p);
        train_keys.insert(*key);
        r.summary["train"][*key]++;
      }
    } else if (!AnyMatches(m.train, *key, m.axis) && !AnyMatches(m.test, *key, m.axis)) {
      stray.insert(*key);
    }
  }
  if (!stray.empty()) {
    throw SplitError("test keys match neither train nor test patterns: " +
                     util::Join({stray.begin(), stray.end()}, ", "));
  }
  for (const auto& p : problems) {
    const auto key = PatternKey(p, m.axis);
    if (!key || p.pool != Pool::kTest) continue;
    TestItem item{p, AnyMatches(m.train, *key, m.axis) && train_keys.count(*key) > 0};
    r.summary[item.seen ? "test_seen" : "test_unseen"][*key]++;
    r.test.push_back(std::move(item));
  }
  return r;
}

inline std::string WriteTestItems(const std::vector<TestItem>& items) {
  std::string out;
  for (const auto& it : items) {
    auto j = ProblemToJson(it.problem);
    j["seen"] = it.seen;
    out += j.dump(-1, ' ', false) + "\n";
  }
  return out;
}

inline std::vector<TestItem> ReadTestItems(std::string_view text) {
  std::vector<TestItem> out;
  int line_no = 0;
  for (const auto& line : util::Lines(text)) {
    ++line_no;
    if (util::Trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      out.push_back({ProblemFromJson(j), j.at("seen").get<bool>()});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad test record: ") + e.what(), line_no);
    }
  }
  return out;
}

inline std::string SplitSummaryTsv(const SplitResult& r) {
  std::string out = "side\tkey\tcount\n";
  for (const auto& [side, keys] : r.summary) {
    for (const auto& [key, n] : keys) out += side + "\t" + key + "\t" + std::to_string(n) + "\n";
  }
  out += "excluded_without_key\t-\t" + std::to_string(r.without_key) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Scoring.

using Predictions = std::map<std::string, Label>;

inline Predictions ParsePredictions(std::string_view text) {
  Predictions out;
  int line_no = 0;
  for (const auto& raw : util::Lines(text)) {
    ++line_no;
    const auto line = util::Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto f = util::Split(line, '\t');
    if (f.size() != 2) throw ParseError("expected <id>\\t<label>", line_no);
    auto label = ParseLabel(util::Trim(f[1]));
    if (!label) throw ParseError("unknown label '" + f[1] + "'", line_no);
    const std::string id(util::Trim(f[0]));
    auto [it, inserted] = out.emplace(id, *label);
    if (!inserted && it->second != *label) {
      throw ValidationError("conflicting predictions for " + id);
    }
  }
  return out;
}

struct RunScore {
  double seen = std::numeric_limits<double>::quiet_NaN();
  double unseen = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::quiet_NaN();
  int64_t n_seen = 0;
  int64_t n_unseen = 0;
};

struct MeanStd {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double std = std::numeric_limits<double>::quiet_NaN();
};

struct ScoreReport {
  std::vector<RunScore> runs;
  MeanStd seen, unseen, delta;
  bool sample_std = false;
  // (main|sub, gold) -> predicted label counts over all runs
  std::map<std::pair<std::string, Label>, std::array<int64_t, 3>> confusion;
};

// NaN entries (no items) are skipped; all-NaN gives NaN.
inline MeanStd Summarize(const std::vector<double>& xs, bool sample) {
  std::vector<double> v;
  for (double x : xs) {
    if (!std::isnan(x)) v.push_back(x);
  }
  MeanStd out;
  if (v.empty()) return out;
  double sum = 0;
  for (double x : v) sum += x;
  out.mean = sum / static_cast<double>(v.size());
  double ss = 0;
  for (double x : v) ss += (x - out.mean) * (x - out.mean);
  const double denom = sample ? static_cast<double>(v.size()) - 1.0 : static_cast<double>(v.size());
  out.std = denom > 0 ? std::sqrt(ss / denom) : 0.0;
  return out;
}

inline ScoreReport Score(const std::vector<TestItem>& test, const std::vector<Predictions>& runs,
                         bool sample_std = false) {
  ScoreReport r;
  r.sample_std = sample_std;
  std::set<std::string> ids;
  for (const auto& t : test) ids.insert(t.problem.id);
  for (size_t i = 0; i < runs.size(); ++i) {
    const auto& pred = runs[i];
    for (const auto& [id, l] : pred) {
      if (!ids.count(id)) throw ValidationError("run " + std::to_string(i + 1) + ": unknown id " + id);
    }
    int64_t ok_seen = 0, ok_unseen = 0;
    RunScore s;
    for (const auto& t : test) {
      auto it = pred.find(t.problem.id);
      if (it == pred.end()) {
        throw ValidationError("run " + std::to_string(i + 1) + ": missing prediction for " + t.problem.id);
      }
      const bool ok = it->second == t.problem.gold;
      (t.seen ? s.n_seen : s.n_unseen)++;
      if (ok) (t.seen ? ok_seen : ok_unseen)++;
      r.confusion[{t.problem.main_fragment + "|" + t.problem.sub_fragment, t.problem.gold}]
                 [static_cast<int>(it->second)]++;
    }
    if (s.n_seen) s.seen = static_cast<double>(ok_seen) / static_cast<double>(s.n_seen);
    if (s.n_unseen) s.unseen = static_cast<double>(ok_unseen) / static_cast<double>(s.n_unseen);
    s.delta = s.seen - s.unseen;
    r.runs.push_back(s);
  }
  std::vector<double> seen, unseen, delta;
  for (const auto& s : r.runs) {
    seen.push_back(s.seen);
    unseen.push_back(s.unseen);
    delta.push_back(s.delta);
  }
  r.seen = Summarize(seen, sample_std);
  r.unseen = Summarize(unseen, sample_std);
  r.delta = Summarize(delta, sample_std);
  return r;
}

namespace splits_internal {

inline std::string Num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace splits_internal

// Machine-readable export: one row, seen/unseen/delta as mean and std.
inline std::string ScoreTsv(const ScoreReport& r, std::string_view split_name) {
  using splits_internal::Num;
  std::string out = "# std=" + std::string(r.sample_std ? "sample" : "population") +
                    " runs=" + std::to_string(r.runs.size()) + "\n";
  out += "split\tseen_mean\tseen_std\tunseen_mean\tunseen_std\tdelta_mean\tdelta_std\n";
  out += std::string(split_name) + "\t" + Num(r.seen.mean) + "\t" + Num(r.seen.std) + "\t" +
         Num(r.unseen.mean) + "\t" + Num(r.unseen.std) + "\t" + Num(r.delta.mean) + "\t" +
         Num(r.delta.std) + "\n";
  return out;
}

inline std::string ScoreRunsTsv(const ScoreReport& r) {
  using splits_internal::Num;
  std::string out = "run\tn_seen\tseen\tn_unseen\tunseen\tdelta\n";
  for (size_t i = 0; i < r.runs.size(); ++i) {
    const auto& s = r.runs[i];
    out += std::to_string(i + 1) + "\t" + std::to_string(s.n_seen) + "\t" + Num(s.seen) + "\t" +
           std::to_string(s.n_unseen) + "\t" + Num(s.unseen) + "\t" + Num(s.delta) + "\n";
  }
  return out;
}

inline std::string ConfusionTsv(const ScoreReport& r) {
  std::string out = "fragment\tgold\tpred_Entailment\tpred_Contradiction\tpred_Neutral\n";
  for (const auto& [key, c] : r.confusion) {
    out += key.first + "\t" + std::string(LabelName(key.second)) + "\t" + std::to_string(c[0]) +
           "\t" + std::to_string(c[1]) + "\t" + std::to_string(c[2]) + "\n";
  }
  return out;
}

// Human-readable table.
inline std::string ScoreText(const ScoreReport& r, std::string_view split_name) {
  using splits_internal::Num;
  std::string out = "split: " + std::string(split_name) + "  runs: " + std::to_string(r.runs.size()) +
                    "  std: " + (r.sample_std ? "sample" : "population") + "\n";
  out += "          mean      std\n";
  out += "seen    " + Num(r.seen.mean) + " " + Num(r.seen.std) + "\n";
  out += "unseen  " + Num(r.unseen.mean) + " " + Num(r.unseen.std) + "\n";
  out += "delta   " + Num(r.delta.mean) + " " + Num(r.delta.std) + "\n";
  return out;
}

}  // namespace tempoforge

#endif  // TEMPOFORGE_SPLITS_H_
