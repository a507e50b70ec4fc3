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

// Case-frame lexicon: predicates, the nouns attested in each of their case
// slots, and explicit conjugated surface forms.
//
// Lexicon file, UTF-8, tab separated, '#' comments:
//
//   F  <predicate_id>  <lemma>  <freq>     opens a frame
//   C  <case>          <noun>   <freq>     adds a noun to the open frame
//   M  <tag>           <surface>           adds a conjugated form
//
// Names and blocklist files hold one entry per line.

#ifndef TEMPOFORGE_LEXICON_H_
#define TEMPOFORGE_LEXICON_H_

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tempoforge/random.h"
#include "tempoforge/util.h"

namespace tempoforge {

enum class CaseLabel : uint8_t { kGa, kWo, kNi, kDe, kTo, kKara, kMade, kE };

inline constexpr std::array<CaseLabel, 8> kAllCases = {
    CaseLabel::kGa, CaseLabel::kWo,   CaseLabel::kNi,   CaseLabel::kDe,
    CaseLabel::kTo, CaseLabel::kKara, CaseLabel::kMade, CaseLabel::kE};

inline std::string_view CaseName(CaseLabel c) {
  static constexpr std::array<std::string_view, 8> kNames = {
      "ga", "wo", "ni", "de", "to", "kara", "made", "e"};
  return kNames[static_cast<int>(c)];
}

inline std::optional<CaseLabel> ParseCase(std::string_view s) {
  for (CaseLabel c : kAllCases) {
    if (CaseName(c) == s) return c;
  }
  return std::nullopt;
}

// Conjugation tags understood by the shipped packs. The set is open: any
// tag made of lowercase letters and underscores is accepted.
inline const std::vector<std::string>& StandardFormTags() {
  static const std::vector<std::string> kTags = {
      "nonpast", "past", "progressive", "progressive_past", "negative",
      "negative_past"};
  return kTags;
}

inline bool IsValidFormTag(std::string_view tag) {
  if (tag.empty()) return false;
  return std::all_of(tag.begin(), tag.end(),
                     [](char c) { return (c >= 'a' && c <= 'z') || c == '_'; });
}

struct NounEntry {
  std::string surface;
  int64_t frequency = 1;

  bool operator==(const NounEntry&) const = default;
};

struct CaseFrame {
  std::string predicate_id;
  std::string lemma;
  int64_t frequency = 1;
  std::map<CaseLabel, std::vector<NounEntry>> cases;
  std::map<std::string, std::string> forms;

  bool operator==(const CaseFrame&) const = default;
};

struct Lexicon {
  std::vector<CaseFrame> frames;
  std::vector<std::string> names;
  std::set<std::string> blocklist;

  bool operator==(const Lexicon&) const = default;
};

class NoCompatiblePredicateError : public Error {
 public:
  using Error::Error;
};

namespace lexicon_internal {

inline bool IsSafeToken(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '{' || c == '}') return false;
  }
  return true;
}

inline std::vector<std::string> ReadList(std::string_view text,
                                         std::string_view what) {
  std::vector<std::string> out;
  int line_no = 0;
  for (const auto& raw : util::Lines(text)) {
    ++line_no;
    const auto line = util::Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (!IsSafeToken(line)) {
      throw ParseError(std::string(what) + " entry must be a single token", line_no);
    }
    out.emplace_back(line);
  }
  return out;
}

inline bool ContainsBlocked(std::string_view s, const std::set<std::string>& blocklist) {
  for (const auto& b : blocklist) {
    if (!b.empty() && s.find(b) != std::string_view::npos) return true;
  }
  return false;
}

}  // namespace lexicon_internal

// Parses the three lexicon inputs from memory. Duplicate (predicate, case,
// noun) rows are merged by summing frequencies.
inline Lexicon ParseLexicon(std::string_view frames_text,
                            std::string_view names_text,
                            std::string_view blocklist_text) {
  using lexicon_internal::IsSafeToken;
  Lexicon lex;
  std::map<std::string, int> frame_line;  // predicate_id -> opening line
  CaseFrame* open = nullptr;
  int open_line = 0;
  auto close_frame = [&]() {
    if (open && open->forms.empty()) {
      throw ParseError("frame " + open->predicate_id + " has no M (form) rows",
                       open_line);
    }
  };
  int line_no = 0;
  for (const auto& raw : util::Lines(frames_text)) {
    ++line_no;
    const auto trimmed = util::Trim(raw);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const auto f = util::Split(trimmed, '\t');
    const std::string& kind = f[0];
    if (kind == "F") {
      if (f.size() != 4) throw ParseError("F row needs 3 fields", line_no);
      const auto freq = util::ParseInt<int64_t>(f[3]);
      if (!freq || *freq < 1) throw ParseError("bad predicate frequency '" + f[3] + "'", line_no);
      if (!IsSafeToken(f[1]) || !IsSafeToken(f[2])) {
        throw ParseError("predicate id and lemma must be single tokens", line_no);
      }
      if (frame_line.count(f[1])) {
        throw ParseError("duplicate predicate " + f[1] + " (first at line " +
                             std::to_string(frame_line[f[1]]) + ")",
                         line_no);
      }
      close_frame();
      frame_line[f[1]] = line_no;
      lex.frames.push_back(CaseFrame{f[1], f[2], *freq, {}, {}});
      open = &lex.frames.back();
      open_line = line_no;
    } else if (kind == "C") {
      if (!open) throw ParseError("C row before any F row", line_no);
      if (f.size() != 4) throw ParseError("C row needs 3 fields", line_no);
      const auto c = ParseCase(f[1]);
      if (!c) throw ParseError("unknown case label '" + f[1] + "'", line_no);
      const auto freq = util::ParseInt<int64_t>(f[3]);
      if (!freq || *freq < 1) throw ParseError("bad noun frequency '" + f[3] + "'", line_no);
      if (!IsSafeToken(f[2])) throw ParseError("noun must be a single token", line_no);
      auto& nouns = open->cases[*c];
      auto it = std::find_if(nouns.begin(), nouns.end(),
                             [&](const NounEntry& n) { return n.surface == f[2]; });
      if (it != nouns.end()) {
        it->frequency += *freq;
      } else {
        nouns.push_back({f[2], *freq});
      }
    } else if (kind == "M") {
      if (!open) throw ParseError("M row before any F row", line_no);
      if (f.size() != 3) throw ParseError("M row needs 2 fields", line_no);
      if (!IsValidFormTag(f[1])) throw ParseError("bad conjugation tag '" + f[1] + "'", line_no);
      if (!IsSafeToken(f[2])) throw ParseError("form must be a single token", line_no);
      open->forms[f[1]] = f[2];
    } else {
      throw ParseError("unknown row type '" + kind + "'", line_no);
    }
  }
  close_frame();
  lex.names = lexicon_internal::ReadList(names_text, "name");
  if (lex.names.empty()) throw ValidationError("names list is empty");
  for (auto& b : lexicon_internal::ReadList(blocklist_text, "blocklist")) {
    lex.blocklist.insert(std::move(b));
  }
  return lex;
}

inline Lexicon LoadLexicon(const std::string& path, const std::string& names_path,
                           const std::string& blocklist_path) {
  return ParseLexicon(util::ReadFile(path), util::ReadFile(names_path),
                      util::ReadFile(blocklist_path));
}

// Keeps frames with frequency > verb_min_freq and, inside them, nouns with
// frequency > noun_min_freq. Anything containing a blocklisted string is
// dropped, as are cases and frames left empty.
inline Lexicon FilterLexicon(const Lexicon& lex, int64_t verb_min_freq,
                             int64_t noun_min_freq) {
  using lexicon_internal::ContainsBlocked;
  Lexicon out;
  out.blocklist = lex.blocklist;
  for (const auto& name : lex.names) {
    if (!ContainsBlocked(name, lex.blocklist)) out.names.push_back(name);
  }
  for (const auto& frame : lex.frames) {
    if (frame.frequency <= verb_min_freq) continue;
    if (ContainsBlocked(frame.lemma, lex.blocklist)) continue;
    bool bad_form = false;
    for (const auto& [tag, surface] : frame.forms) {
      bad_form |= ContainsBlocked(surface, lex.blocklist);
    }
    if (bad_form) continue;
    CaseFrame kept{frame.predicate_id, frame.lemma, frame.frequency, {}, frame.forms};
    for (const auto& [c, nouns] : frame.cases) {
      std::vector<NounEntry> survivors;
      for (const auto& n : nouns) {
        if (n.frequency > noun_min_freq && !ContainsBlocked(n.surface, lex.blocklist)) {
          survivors.push_back(n);
        }
      }
      if (!survivors.empty()) kept.cases[c] = std::move(survivors);
    }
    if (!kept.cases.empty()) out.frames.push_back(std::move(kept));
  }
  return out;
}

struct SampleOptions {
  bool frequency_weighted = false;
  // When false, two case slots of one predicate never share a noun.
  bool allow_noun_reuse = false;
};

struct FrameBinding {
  const CaseFrame* frame = nullptr;
  std::map<CaseLabel, std::string> nouns;
};

namespace lexicon_internal {

inline bool Eligible(const CaseFrame& frame, const std::set<CaseLabel>& cases,
                     const std::set<std::string>& forms, bool allow_reuse) {
  for (CaseLabel c : cases) {
    auto it = frame.cases.find(c);
    if (it == frame.cases.end() || it->second.empty()) return false;
  }
  for (const auto& tag : forms) {
    if (!frame.forms.count(tag)) return false;
  }
  if (allow_reuse || cases.size() < 2) return true;
  // Distinct assignment exists (tiny backtracking search, <= 8 cases).
  std::vector<const std::vector<NounEntry>*> lists;
  for (CaseLabel c : cases) lists.push_back(&frame.cases.at(c));
  std::set<std::string> used;
  std::function<bool(size_t)> search = [&](size_t i) {
    if (i == lists.size()) return true;
    for (const auto& n : *lists[i]) {
      if (used.count(n.surface)) continue;
      used.insert(n.surface);
      if (search(i + 1)) return true;
      used.erase(n.surface);
    }
    return false;
  };
  return search(0);
}

inline const NounEntry& PickNoun(const std::vector<const NounEntry*>& pool,
                                 bool weighted, Rng& rng) {
  if (!weighted) return *pool[rng.Index(pool.size())];
  int64_t total = 0;
  for (const auto* n : pool) total += n->frequency;
  int64_t r = rng.UniformInt(0, total - 1);
  for (const auto* n : pool) {
    if (r < n->frequency) return *n;
    r -= n->frequency;
  }
  return *pool.back();
}

}  // namespace lexicon_internal

// Uniformly picks a frame that has every required case and form, then one
// noun per required case. Throws NoCompatiblePredicateError when nothing
// qualifies.
inline FrameBinding SampleFrame(const Lexicon& lex,
                                const std::set<CaseLabel>& required_cases,
                                const std::set<std::string>& required_forms,
                                Rng& rng, const SampleOptions& options = {}) {
  std::vector<const CaseFrame*> eligible;
  for (const auto& frame : lex.frames) {
    if (lexicon_internal::Eligible(frame, required_cases, required_forms,
                                   options.allow_noun_reuse)) {
      eligible.push_back(&frame);
    }
  }
  if (eligible.empty()) {
    std::string need;
    for (CaseLabel c : required_cases) need += std::string(need.empty() ? "" : ",") + std::string(CaseName(c));
    std::string forms;
    for (const auto& f : required_forms) forms += (forms.empty() ? "" : ",") + f;
    throw NoCompatiblePredicateError("no compatible predicate: cases {" + need +
                                     "} forms {" + forms + "}");
  }
  FrameBinding b;
  b.frame = eligible[rng.Index(eligible.size())];
  // Fill the most constrained cases first so exclusion rarely dead-ends.
  std::vector<CaseLabel> order(required_cases.begin(), required_cases.end());
  std::stable_sort(order.begin(), order.end(), [&](CaseLabel x, CaseLabel y) {
    return b.frame->cases.at(x).size() < b.frame->cases.at(y).size();
  });
  for (int attempt = 0; attempt < 100; ++attempt) {
    b.nouns.clear();
    std::set<std::string> used;
    bool ok = true;
    for (CaseLabel c : order) {
      std::vector<const NounEntry*> pool;
      for (const auto& n : b.frame->cases.at(c)) {
        if (options.allow_noun_reuse || !used.count(n.surface)) pool.push_back(&n);
      }
      if (pool.empty()) {
        ok = false;
        break;
      }
      const auto& pick = lexicon_internal::PickNoun(pool, options.frequency_weighted, rng);
      used.insert(pick.surface);
      b.nouns[c] = pick.surface;
    }
    if (ok) return b;
  }
  throw NoCompatiblePredicateError("could not assign distinct nouns for " +
                                   b.frame->predicate_id);
}

}  // namespace tempoforge

#endif  // TEMPOFORGE_LEXICON_H_
