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

// Sentence candidates: templates with content words filled and temporal
// slots still masked, split into train and test pools, then filtered by
// human review.

#ifndef TEMPOFORGE_CANDIDATES_H_
#define TEMPOFORGE_CANDIDATES_H_

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tempoforge/config.h"
#include "tempoforge/lexicon.h"
#include "tempoforge/random.h"
#include "tempoforge/template.h"
#include "tempoforge/util.h"

namespace tempoforge {

enum class Pool : uint8_t { kTrain, kTest };

inline std::string_view PoolName(Pool p) { return p == Pool::kTrain ? "train" : "test"; }

inline std::optional<Pool> ParsePool(std::string_view s) {
  if (s == "train") return Pool::kTrain;
  if (s == "test") return Pool::kTest;
  return std::nullopt;
}

class GenerationError : public Error {
 public:
  using Error::Error;
};

struct SentenceCandidate {
  std::string id;  // <template_id>#<ordinal>
  std::string template_id;
  Pool pool = Pool::kTrain;
  // Slot key -> filler: names for agents, surfaces for nouns, predicate ids
  // for verbs.
  std::map<std::string, std::string> content;
  std::vector<std::string> premises;  // temporal slots still masked
  std::string hypothesis;
  bool unreviewed = false;

  bool operator==(const SentenceCandidate&) const = default;
};

namespace candidates_internal {

struct Filled {
  std::map<std::string, std::string> content;
  std::vector<std::string> premises;
  std::string hypothesis;
};

inline std::string FillPattern(const Pattern& p, const std::map<std::string, std::string>& content,
                               const std::map<int, const CaseFrame*>& verbs) {
  std::string out;
  for (const auto& seg : p.segments) {
    if (std::holds_alternative<std::string>(seg)) {
      out += std::get<std::string>(seg);
      continue;
    }
    const Slot& s = std::get<Slot>(seg);
    switch (s.kind) {
      case SlotKind::kAgent:
      case SlotKind::kNoun: out += content.at(s.Key()); break;
      case SlotKind::kVerb: out += verbs.at(s.index)->forms.at(*s.form); break;
      case SlotKind::kInterval:
      case SlotKind::kTimePoint: out += s.Marker(); break;
    }
  }
  return out;
}

// One random content binding.
inline Filled DrawContent(const Template& t, const SlotProfile& profile, const Lexicon& lex,
                          const SampleOptions& options, Rng& rng) {
  Filled f;
  if (profile.agents.size() > lex.names.size()) {
    throw NoCompatiblePredicateError("template needs " + std::to_string(profile.agents.size()) +
                                     " distinct names; the list has " +
                                     std::to_string(lex.names.size()));
  }
  std::vector<size_t> order(lex.names.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Partial Fisher-Yates: distinct names for distinct agent slots.
  size_t next = 0;
  for (int idx : profile.agents) {
    const size_t j = next + rng.Index(order.size() - next);
    std::swap(order[next], order[j]);
    f.content["agent_" + std::to_string(idx)] = lex.names[order[next++]];
  }
  std::map<int, const CaseFrame*> verbs;
  bool first = true;
  for (const auto& [idx, forms] : profile.verbs) {
    std::set<CaseLabel> cases;
    if (first) {
      for (const auto& [n, c] : profile.nouns) cases.insert(c);
    }
    const FrameBinding b = SampleFrame(lex, first ? cases : std::set<CaseLabel>{}, forms, rng, options);
    verbs[idx] = b.frame;
    f.content["vp_" + std::to_string(idx)] = b.frame->predicate_id;
    if (first) {
      for (const auto& [n, c] : profile.nouns) f.content["np_" + std::to_string(n)] = b.nouns.at(c);
    }
    first = false;
  }
  for (const auto& p : t.premises) f.premises.push_back(FillPattern(p, f.content, verbs));
  f.hypothesis = FillPattern(t.hypothesis, f.content, verbs);
  return f;
}

inline std::string BindingKey(const std::map<std::string, std::string>& content) {
  std::string key;
  for (const auto& [k, v] : content) key += k + "=" + v + "\x1f";
  return key;
}

}  // namespace candidates_internal

struct CandidateResult {
  std::vector<SentenceCandidate> candidates;
  std::vector<std::string> log;
};

// Up to `fan_out` candidates per template with pairwise distinct content
// bindings. Pools are assigned per template by a seeded shuffle, so no
// binding is in both pools.
inline CandidateResult GenCandidates(const std::vector<Template>& templates, const Lexicon& lex,
                                     const GenConfig& config) {
  using namespace candidates_internal;
  CandidateResult result;
  const SampleOptions options{config.frequency_weighted, config.allow_noun_reuse};
  std::vector<const Template*> sorted;
  for (const auto& t : templates) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](const Template* a, const Template* b) { return a->id < b->id; });
  for (const Template* t : sorted) {
    const SlotProfile profile = ProfileOf(*t);
    Rng rng(StableHash(config.seed, std::string("candidates"), t->id));
    std::vector<Filled> filled;
    std::set<std::string> seen;
    const int budget = config.fan_out * 20;
    int blocked = 0;
    try {
      for (int attempt = 0; attempt < budget && static_cast<int>(filled.size()) < config.fan_out;
           ++attempt) {
        Filled f = DrawContent(*t, profile, lex, options, rng);
        bool bad = false;
        for (const auto& p : f.premises) bad |= lexicon_internal::ContainsBlocked(p, lex.blocklist);
        bad |= lexicon_internal::ContainsBlocked(f.hypothesis, lex.blocklist);
        if (bad) {
          ++blocked;
          continue;
        }
        if (!seen.insert(BindingKey(f.content)).second) continue;
        filled.push_back(std::move(f));
      }
    } catch (const NoCompatiblePredicateError& e) {
      result.log.push_back(t->id + ": skipped: " + e.what());
    }
    if (filled.empty()) {
      throw GenerationError("template " + t->id + " produced zero candidates" +
                            (blocked ? " (every draw hit the blocklist)" : ""));
    }
    if (static_cast<int>(filled.size()) < config.fan_out) {
      result.log.push_back(t->id + ": " + std::to_string(filled.size()) + " of " +
                           std::to_string(config.fan_out) + " distinct candidates");
    }
    std::vector<size_t> order(filled.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.Shuffle(order);
    const size_t n_test = static_cast<size_t>(std::llround(config.test_fraction * filled.size()));
    std::vector<bool> is_test(filled.size(), false);
    for (size_t i = 0; i < n_test; ++i) is_test[order[i]] = true;
    for (size_t i = 0; i < filled.size(); ++i) {
      SentenceCandidate c;
      c.id = t->id + "#" + std::to_string(i);
      c.template_id = t->id;
      c.pool = is_test[i] ? Pool::kTest : Pool::kTrain;
      c.content = std::move(filled[i].content);
      c.premises = std::move(filled[i].premises);
      c.hypothesis = std::move(filled[i].hypothesis);
      result.candidates.push_back(std::move(c));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Serialization: one JSON object per line.

inline nlohmann::ordered_json CandidateToJson(const SentenceCandidate& c) {
  nlohmann::ordered_json j;
  j["id"] = c.id;
  j["template_id"] = c.template_id;
  j["pool"] = PoolName(c.pool);
  j["content"] = c.content;
  j["premises"] = c.premises;
  j["hypothesis"] = c.hypothesis;
  if (c.unreviewed) j["unreviewed"] = true;
  return j;
}

inline SentenceCandidate CandidateFromJson(const nlohmann::json& j) {
  SentenceCandidate c;
  c.id = j.at("id").get<std::string>();
  c.template_id = j.at("template_id").get<std::string>();
  auto pool = ParsePool(j.at("pool").get<std::string>());
  if (!pool) throw ValidationError("candidate " + c.id + ": bad pool");
  c.pool = *pool;
  c.content = j.at("content").get<std::map<std::string, std::string>>();
  c.premises = j.at("premises").get<std::vector<std::string>>();
  c.hypothesis = j.at("hypothesis").get<std::string>();
  c.unreviewed = j.value("unreviewed", false);
  return c;
}

inline std::string WriteCandidates(const std::vector<SentenceCandidate>& cs) {
  std::string out;
  for (const auto& c : cs) out += CandidateToJson(c).dump(-1, ' ', false) + "\n";
  return out;
}

inline std::vector<SentenceCandidate> ReadCandidates(std::string_view text) {
  std::vector<SentenceCandidate> out;
  int line_no = 0;
  for (const auto& line : util::Lines(text)) {
    ++line_no;
    if (util::Trim(line).empty()) continue;
    try {
      out.push_back(CandidateFromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad candidate record: ") + e.what(), line_no);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Review decisions.

enum class Decision : uint8_t { kAccept, kReject };

inline std::string_view DecisionName(Decision d) {
  return d == Decision::kAccept ? "accept" : "reject";
}

using Decisions = std::map<std::string, Decision>;

// `<candidate_id> <TAB> accept|reject` lines. Repeating a decision is
// fine; contradicting one is an error.
inline Decisions ParseDecisions(std::string_view text) {
  Decisions out;
  int line_no = 0;
  for (const auto& raw : util::Lines(text)) {
    ++line_no;
    const auto line = util::Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto f = util::Split(line, '\t');
    if (f.size() != 2) throw ParseError("expected <id>\\t<accept|reject>", line_no);
    const auto v = util::Trim(f[1]);
    Decision d;
    if (v == "accept") d = Decision::kAccept;
    else if (v == "reject") d = Decision::kReject;
    else throw ParseError("decision must be accept or reject", line_no);
    const std::string id(util::Trim(f[0]));
    auto [it, inserted] = out.emplace(id, d);
    if (!inserted && it->second != d) {
      throw ValidationError("conflicting decisions for " + id + " (line " +
                            std::to_string(line_no) + ")");
    }
  }
  return out;
}

enum class MergePolicy : uint8_t { kMajority, kUnanimity };

// Majority: a side wins with more than half of all reviewers. Unanimity:
// accept needs every reviewer; any reject rejects. Anything else stays
// undecided.
inline Decisions MergeDecisions(const std::vector<Decisions>& reviewers, MergePolicy policy) {
  std::set<std::string> ids;
  for (const auto& r : reviewers) {
    for (const auto& [id, d] : r) ids.insert(id);
  }
  const size_t n = reviewers.size();
  Decisions out;
  for (const auto& id : ids) {
    size_t acc = 0, rej = 0;
    for (const auto& r : reviewers) {
      auto it = r.find(id);
      if (it == r.end()) continue;
      (it->second == Decision::kAccept ? acc : rej)++;
    }
    if (policy == MergePolicy::kMajority) {
      if (2 * acc > n) out[id] = Decision::kAccept;
      else if (2 * rej > n) out[id] = Decision::kReject;
    } else {
      if (rej > 0) out[id] = Decision::kReject;
      else if (acc == n) out[id] = Decision::kAccept;
    }
  }
  return out;
}

// Drops rejected test candidates. Undecided test candidates are dropped in
// strict mode and kept with `unreviewed` set in permissive mode. The train
// pool passes through.
inline std::vector<SentenceCandidate> ApplyReview(const std::vector<SentenceCandidate>& candidates,
                                                  const Decisions& decisions, ReviewMode mode) {
  std::set<std::string> known;
  for (const auto& c : candidates) known.insert(c.id);
  for (const auto& [id, d] : decisions) {
    if (!known.count(id)) throw ValidationError("decision for unknown candidate " + id);
  }
  std::vector<SentenceCandidate> out;
  for (const auto& c : candidates) {
    if (c.pool == Pool::kTrain) {
      out.push_back(c);
      continue;
    }
    auto it = decisions.find(c.id);
    if (it == decisions.end()) {
      if (mode == ReviewMode::kPermissive) {
        out.push_back(c);
        out.back().unreviewed = true;
      }
    } else if (it->second == Decision::kAccept) {
      out.push_back(c);
      out.back().unreviewed = false;
    }
  }
  return out;
}

struct ReviewSummary {
  int presented = 0;
  int accepted = 0;
  int rejected = 0;
  int skipped = 0;
  bool quit = false;
};

// Terminal queue over undecided test candidates. Reads one of a/r/s/q per
// line from `in`; each accept or reject is appended to `log` and flushed
// before the next item is shown.
inline ReviewSummary RunReviewQueue(const std::vector<SentenceCandidate>& candidates,
                                    const Decisions& existing, std::istream& in,
                                    std::ostream& out, std::ostream& log,
                                    std::string_view filter = "") {
  ReviewSummary s;
  std::vector<const SentenceCandidate*> queue;
  for (const auto& c : candidates) {
    if (c.pool != Pool::kTest || existing.count(c.id)) continue;
    if (!filter.empty() && c.id.find(filter) == std::string::npos) continue;
    queue.push_back(&c);
  }
  if (queue.empty()) {
    out << "review queue is empty\n";
    return s;
  }
  for (size_t i = 0; i < queue.size(); ++i) {
    const auto& c = *queue[i];
    out << "[" << (i + 1) << "/" << queue.size() << "] " << c.id << "\n";
    for (const auto& p : c.premises) out << "  P: " << p << "\n";
    out << "  H: " << c.hypothesis << "\n";
    std::string answer;
    while (true) {
      out << "  (a)ccept (r)eject (s)kip (q)uit > " << std::flush;
      if (!std::getline(in, answer)) {
        s.quit = true;
        break;
      }
      answer = std::string(util::Trim(answer));
      if (answer == "a" || answer == "r" || answer == "s" || answer == "q") break;
    }
    if (s.quit || answer == "q") {
      s.quit = true;
      break;
    }
    ++s.presented;
    if (answer == "s") {
      ++s.skipped;
      continue;
    }
    const Decision d = answer == "a" ? Decision::kAccept : Decision::kReject;
    log << c.id << '\t' << DecisionName(d) << '\n' << std::flush;
    if (!log) throw Error("failed to append decision for " + c.id);
    (d == Decision::kAccept ? s.accepted : s.rejected)++;
  }
  out << "reviewed " << s.presented << ": " << s.accepted << " accepted, " << s.rejected
      << " rejected, " << s.skipped << " skipped\n";
  return s;
}

}  // namespace tempoforge

#endif  // TEMPOFORGE_CANDIDATES_H_
