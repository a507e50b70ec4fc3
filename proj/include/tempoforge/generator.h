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

// Problems: candidates with temporal expressions assigned, balanced per
// (template, gold label).

#ifndef TEMPOFORGE_GENERATOR_H_
#define TEMPOFORGE_GENERATOR_H_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"
#include "tempoforge/candidates.h"
#include "tempoforge/condition.h"
#include "tempoforge/config.h"
#include "tempoforge/evaluate.h"
#include "tempoforge/lexicon.h"
#include "tempoforge/random.h"
#include "tempoforge/render.h"
#include "tempoforge/sampler.h"
#include "tempoforge/template.h"
#include "tempoforge/temporal.h"

namespace tempoforge {

struct Problem {
  std::string id;
  std::vector<std::string> premises;
  std::string hypothesis;
  Label gold = Label::kNeutral;
  std::string template_id;
  std::string main_fragment;
  std::string sub_fragment;
  Difficulty difficulty = Difficulty::kBasic;
  std::optional<TimeFormat> time_format;
  std::optional<SpanMode> span;
  std::map<std::string, std::string> content;
  TemporalBindings temporal;
  uint64_t seed = 0;
  Pool pool = Pool::kTrain;
  std::string candidate_id;
  std::vector<std::string> flags;

  bool operator==(const Problem&) const = default;
};

// ---------------------------------------------------------------------------
// Serialization.

inline nlohmann::ordered_json TemporalToJson(const TemporalValue& v) {
  nlohmann::ordered_json j;
  if (std::holds_alternative<IntervalValue>(v)) {
    const auto& iv = std::get<IntervalValue>(v);
    j["magnitude"] = iv.magnitude;
    j["unit"] = UnitName(iv.unit);
    return j;
  }
  const auto& tp = std::get<TruncatedTimePoint>(v);
  j["format"] = tp.format.Name();
  if (tp.format.Has(Unit::kYear)) j["year"] = tp.year;
  if (tp.format.Has(Unit::kMonth)) j["month"] = tp.month;
  if (tp.format.Has(Unit::kDay)) j["day"] = tp.day;
  if (tp.format.Has(Unit::kHour)) j["hour"] = tp.hour;
  return j;
}

inline TemporalValue TemporalFromJson(TemporalKind kind, const nlohmann::json& j) {
  if (kind == TemporalKind::kInterval) {
    auto unit = ParseUnit(j.at("unit").get<std::string>());
    if (!unit) throw ValidationError("bad interval unit");
    return IntervalValue{j.at("magnitude").get<int64_t>(), *unit};
  }
  auto format = TimeFormat::Parse(j.at("format").get<std::string>());
  if (!format) throw ValidationError("bad time format");
  TruncatedTimePoint tp;
  tp.format = *format;
  if (format->Has(Unit::kYear)) tp.year = j.at("year").get<int64_t>();
  if (format->Has(Unit::kMonth)) tp.month = j.at("month").get<int>();
  if (format->Has(Unit::kDay)) tp.day = j.at("day").get<int>();
  if (format->Has(Unit::kHour)) tp.hour = j.at("hour").get<int>();
  if (!tp.IsValid()) throw ValidationError("invalid time point");
  return tp;
}

inline nlohmann::ordered_json ProblemToJson(const Problem& p) {
  nlohmann::ordered_json j;
  j["id"] = p.id;
  j["premises"] = p.premises;
  j["hypothesis"] = p.hypothesis;
  j["gold_label"] = LabelName(p.gold);
  j["template_id"] = p.template_id;
  j["main_fragment"] = p.main_fragment;
  j["sub_fragment"] = p.sub_fragment;
  j["difficulty"] = DifficultyName(p.difficulty);
  j["time_format"] = p.time_format ? nlohmann::ordered_json(p.time_format->Name()) : nullptr;
  j["span"] = p.span ? nlohmann::ordered_json(SpanName(*p.span)) : nullptr;
  std::map<std::string, nlohmann::ordered_json> bindings;
  for (const auto& [k, v] : p.content) bindings[k] = v;
  for (const auto& [ref, v] : p.temporal) bindings[ref.Name()] = TemporalToJson(v);
  nlohmann::ordered_json b = nlohmann::ordered_json::object();
  for (auto& [k, v] : bindings) b[k] = std::move(v);
  j["bindings"] = std::move(b);
  j["seed"] = p.seed;
  j["pool"] = PoolName(p.pool);
  j["candidate_id"] = p.candidate_id;
  j["flags"] = p.flags;
  return j;
}

inline Problem ProblemFromJson(const nlohmann::json& j) {
  Problem p;
  p.id = j.at("id").get<std::string>();
  p.premises = j.at("premises").get<std::vector<std::string>>();
  p.hypothesis = j.at("hypothesis").get<std::string>();
  auto gold = ParseLabel(j.at("gold_label").get<std::string>());
  if (!gold) throw ValidationError(p.id + ": bad gold_label");
  p.gold = *gold;
  p.template_id = j.at("template_id").get<std::string>();
  p.main_fragment = j.at("main_fragment").get<std::string>();
  p.sub_fragment = j.at("sub_fragment").get<std::string>();
  auto diff = ParseDifficulty(j.at("difficulty").get<std::string>());
  if (!diff) throw ValidationError(p.id + ": bad difficulty");
  p.difficulty = *diff;
  if (!j.at("time_format").is_null()) {
    p.time_format = TimeFormat::Parse(j.at("time_format").get<std::string>());
    if (!p.time_format) throw ValidationError(p.id + ": bad time_format");
  }
  if (!j.at("span").is_null()) {
    p.span = ParseSpan(j.at("span").get<std::string>());
    if (!p.span) throw ValidationError(p.id + ": bad span");
  }
  for (const auto& [k, v] : j.at("bindings").items()) {
    if (util::StartsWith(k, "interval_") || util::StartsWith(k, "timepoint_")) {
      const bool iv = util::StartsWith(k, "interval_");
      auto idx = util::ParseInt<int>(std::string_view(k).substr(iv ? 9 : 10));
      if (!idx) throw ValidationError(p.id + ": bad binding key " + k);
      const TemporalKind kind = iv ? TemporalKind::kInterval : TemporalKind::kTimePoint;
      p.temporal[{kind, *idx}] = TemporalFromJson(kind, v);
    } else {
      p.content[k] = v.get<std::string>();
    }
  }
  p.seed = j.at("seed").get<uint64_t>();
  auto pool = ParsePool(j.at("pool").get<std::string>());
  if (!pool) throw ValidationError(p.id + ": bad pool");
  p.pool = *pool;
  p.candidate_id = j.value("candidate_id", "");
  p.flags = j.value("flags", std::vector<std::string>{});
  return p;
}

inline std::string WriteProblems(const std::vector<Problem>& problems) {
  std::string out;
  for (const auto& p : problems) out += ProblemToJson(p).dump(-1, ' ', false) + "\n";
  return out;
}

inline std::vector<Problem> ReadProblems(std::string_view text) {
  std::vector<Problem> out;
  int line_no = 0;
  for (const auto& line : util::Lines(text)) {
    ++line_no;
    if (util::Trim(line).empty()) continue;
    try {
      out.push_back(ProblemFromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad problem record: ") + e.what(), line_no);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering and the surface round trip.

// Replaces temporal markers in masked candidate text.
inline std::string RenderTemporal(std::string_view masked, const TemporalBindings& b,
                                  const RenderTable& table) {
  std::string out;
  size_t i = 0;
  while (i < masked.size()) {
    const auto open = masked.find('{', i);
    if (open == std::string_view::npos) {
      out += masked.substr(i);
      break;
    }
    out += masked.substr(i, open - i);
    const auto close = masked.find('}', open);
    if (close == std::string_view::npos) throw GenerationError("unterminated slot marker");
    std::string error;
    auto slot = template_internal::ParseSlot(masked.substr(open + 1, close - open - 1), error);
    if (!slot) throw GenerationError(error);
    const TemporalKind kind =
        slot->kind == SlotKind::kInterval ? TemporalKind::kInterval : TemporalKind::kTimePoint;
    auto it = b.find({kind, slot->index});
    if (it == b.end()) throw GenerationError("no value for " + slot->Key());
    if (kind == TemporalKind::kInterval) {
      out += Render(std::get<IntervalValue>(it->second), table);
    } else if (slot->weekday) {
      out += RenderWeekday(DayOfWeek(std::get<TruncatedTimePoint>(it->second).Snap()), table);
    } else {
      out += Render(std::get<TruncatedTimePoint>(it->second), table);
    }
    i = close + 1;
  }
  return out;
}

// Masked text for a content binding, with verb surfaces looked up in `lex`.
inline std::vector<std::string> MaskedText(const Template& t,
                                           const std::map<std::string, std::string>& content,
                                           const Lexicon& lex) {
  std::map<int, const CaseFrame*> verbs;
  for (const auto& [idx, forms] : ProfileOf(t).verbs) {
    const auto& pid = content.at("vp_" + std::to_string(idx));
    auto it = std::find_if(lex.frames.begin(), lex.frames.end(),
                           [&](const CaseFrame& f) { return f.predicate_id == pid; });
    if (it == lex.frames.end()) throw ValidationError("unknown predicate " + pid);
    verbs[idx] = &*it;
  }
  std::vector<std::string> out;
  for (const auto& p : t.premises) out.push_back(candidates_internal::FillPattern(p, content, verbs));
  out.push_back(candidates_internal::FillPattern(t.hypothesis, content, verbs));
  return out;
}

namespace generator_internal {

struct MaskedSegment {
  std::string literal;
  std::optional<Slot> slot;
};

inline std::vector<MaskedSegment> SplitMasked(std::string_view masked) {
  std::vector<MaskedSegment> out;
  size_t i = 0;
  while (i < masked.size()) {
    const auto open = masked.find('{', i);
    if (open == std::string_view::npos) {
      out.push_back({std::string(masked.substr(i)), std::nullopt});
      break;
    }
    if (open > i) out.push_back({std::string(masked.substr(i, open - i)), std::nullopt});
    const auto close = masked.find('}', open);
    if (close == std::string_view::npos) throw GenerationError("unterminated slot marker");
    std::string error;
    auto slot = template_internal::ParseSlot(masked.substr(open + 1, close - open - 1), error);
    if (!slot) throw GenerationError(error);
    out.push_back({"", slot});
    i = close + 1;
  }
  return out;
}

struct Captures {
  TemporalBindings values;
  std::map<int, Weekday> weekdays;
};

// Backtracking match of rendered text against masked segments; temporal
// spans must parse and agree with earlier captures of the same slot.
inline bool Match(const std::vector<MaskedSegment>& segs, size_t si, std::string_view text,
                  size_t pos, std::optional<TimeFormat> format, const RenderTable& table,
                  Captures& caps) {
  if (si == segs.size()) return pos == text.size();
  const auto& seg = segs[si];
  if (!seg.slot) {
    if (text.substr(pos, seg.literal.size()) != seg.literal) return false;
    return Match(segs, si + 1, text, pos + seg.literal.size(), format, table, caps);
  }
  const Slot& slot = *seg.slot;
  for (size_t end = pos + 1; end <= text.size(); ++end) {
    if (si + 1 < segs.size() && !segs[si + 1].slot &&
        text.substr(end, segs[si + 1].literal.size()) != segs[si + 1].literal) {
      continue;
    }
    const std::string_view span = text.substr(pos, end - pos);
    Captures next = caps;
    try {
      if (slot.kind == SlotKind::kInterval) {
        const TemporalSlotRef ref{TemporalKind::kInterval, slot.index};
        const IntervalValue iv = ParseRenderedInterval(span, table);
        auto it = next.values.find(ref);
        if (it != next.values.end() && !(it->second == TemporalValue(iv))) continue;
        next.values[ref] = iv;
      } else if (slot.weekday) {
        auto w = ParseRenderedWeekday(span, table);
        if (!w) continue;
        auto it = next.weekdays.find(slot.index);
        if (it != next.weekdays.end() && it->second != *w) continue;
        next.weekdays[slot.index] = *w;
      } else {
        if (!format) return false;
        const TemporalSlotRef ref{TemporalKind::kTimePoint, slot.index};
        const TruncatedTimePoint tp = ParseRendered(span, *format, table);
        auto it = next.values.find(ref);
        if (it != next.values.end() && !(it->second == TemporalValue(tp))) continue;
        next.values[ref] = tp;
      }
    } catch (const FormatMismatchError&) {
      continue;
    }
    if (Match(segs, si + 1, text, end, format, table, next)) {
      caps = std::move(next);
      return true;
    }
  }
  return false;
}

}  // namespace generator_internal

// Reads the temporal values back out of the rendered text (given the
// masked text it came from) and re-evaluates the condition. Returns the
// recovered label, or nullopt when the text does not parse back.
inline std::optional<Label> SurfaceLabel(const Template& t,
                                         const std::vector<std::string>& masked,
                                         const std::vector<std::string>& rendered,
                                         std::optional<TimeFormat> format,
                                         const RenderTable& table,
                                         TemporalBindings* recovered = nullptr) {
  using namespace generator_internal;
  if (masked.size() != rendered.size()) return std::nullopt;
  Captures caps;
  for (size_t i = 0; i < masked.size(); ++i) {
    if (!Match(SplitMasked(masked[i]), 0, rendered[i], 0, format, table, caps)) {
      return std::nullopt;
    }
  }
  for (const auto& [idx, w] : caps.weekdays) {
    auto it = caps.values.find({TemporalKind::kTimePoint, idx});
    if (it == caps.values.end()) return std::nullopt;
    const auto& tp = std::get<TruncatedTimePoint>(it->second);
    if (DayOfWeek(tp.Snap()) != w) return std::nullopt;
  }
  if (caps.values.size() != ProfileOf(t).TemporalRefs().size()) return std::nullopt;
  if (recovered) *recovered = caps.values;
  try {
    return EvalCondition(t.condition, caps.values);
  } catch (const EvalError&) {
    return std::nullopt;
  }
}

// Convenience: the round trip for a stored problem.
inline bool SurfaceFaithful(const Problem& p, const Template& t, const Lexicon& lex,
                            const RenderTable& table) {
  auto masked = MaskedText(t, p.content, lex);
  std::vector<std::string> rendered = p.premises;
  rendered.push_back(p.hypothesis);
  TemporalBindings recovered;
  auto label = SurfaceLabel(t, masked, rendered, p.time_format, table, &recovered);
  return label && *label == p.gold && recovered == p.temporal;
}

// ---------------------------------------------------------------------------
// Instantiation.

struct InstantiateResult {
  std::vector<Problem> problems;
  std::vector<std::string> log;
  std::map<std::string, FeasibleSet> feasible;
};

inline std::string ProblemId(const std::string& template_id, Label label, int ordinal) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d", ordinal);
  return template_id + "-" + std::string(1, LabelInitial(label)) + "-" + buf;
}

namespace generator_internal {

struct PairJob {
  const Template* tmpl;
  Label label;
  std::vector<const SentenceCandidate*> train;
  std::vector<const SentenceCandidate*> test;
};

inline std::vector<Problem> RunPair(const PairJob& job, const GenConfig& config,
                                    const RenderTable& table) {
  const Template& t = *job.tmpl;
  const SlotProfile profile = ProfileOf(t);
  const auto choices = CompatibleChoices(t, config.formats);
  if (profile.HasTemporal() && choices.empty()) {
    throw GenerationError(t.id + ": no allowed time format fits the condition");
  }
  int n_test = 0;
  if (!job.test.empty()) {
    n_test = job.train.empty() ? config.k
                               : static_cast<int>(std::llround(config.k * config.test_fraction));
  }
  std::vector<Problem> out;
  std::set<std::string> texts;
  for (int ordinal = 0; ordinal < config.k; ++ordinal) {
    const bool test = ordinal < n_test;
    const auto& pool = test ? job.test : job.train;
    const uint64_t seed = StableHash(config.seed, t.id, std::string(LabelName(job.label)),
                                     static_cast<int64_t>(ordinal));
    Rng rng(seed);
    int hits = 0;
    bool done = false;
    for (int attempt = 0; attempt < config.max_attempts && !done; ++attempt) {
      const SentenceCandidate& c = *pool[rng.Index(pool.size())];
      TemporalDraw draw = DrawTemporal(profile, choices, config.spans, config.near_fraction, rng);
      const Evaluation e = Evaluate(t.condition, draw.bindings);
      if (e.adjusted || e.label != job.label) continue;
      ++hits;
      Problem p;
      for (const auto& m : c.premises) p.premises.push_back(RenderTemporal(m, draw.bindings, table));
      p.hypothesis = RenderTemporal(c.hypothesis, draw.bindings, table);
      std::string key = util::Join(p.premises, "\n") + "\n\n" + p.hypothesis;
      if (texts.count(key)) continue;
      std::vector<std::string> masked = c.premises;
      masked.push_back(c.hypothesis);
      std::vector<std::string> rendered = p.premises;
      rendered.push_back(p.hypothesis);
      TemporalBindings recovered;
      auto back = SurfaceLabel(t, masked, rendered, draw.format, table, &recovered);
      if (!back || *back != job.label || !(recovered == draw.bindings)) {
        throw GenerationError(t.id + ": rendered text does not read back to its bindings: " +
                              p.hypothesis);
      }
      texts.insert(std::move(key));
      p.id = ProblemId(t.id, job.label, ordinal);
      p.gold = job.label;
      p.template_id = t.id;
      p.main_fragment = t.main_fragment;
      p.sub_fragment = t.sub_fragment;
      p.difficulty = t.difficulty;
      p.time_format = draw.format;
      p.span = draw.span;
      p.content = c.content;
      p.temporal = std::move(draw.bindings);
      p.seed = seed;
      p.pool = c.pool;
      p.candidate_id = c.id;
      p.flags = std::move(draw.flags);
      if (c.unreviewed) p.flags.emplace_back("unreviewed");
      out.push_back(std::move(p));
      done = true;
    }
    if (!done) {
      char rate[32];
      std::snprintf(rate, sizeof(rate), "%.4f", static_cast<double>(hits) / config.max_attempts);
      throw GenerationError("resample budget exhausted for (" + t.id + ", " +
                            std::string(LabelName(job.label)) + ") at ordinal " +
                            std::to_string(ordinal) + "; hit rate " + rate);
    }
  }
  return out;
}

}  // namespace generator_internal

// Exactly config.k problems for every (template, feasible label) pair.
// Pairs run on config.workers threads; each pair owns its seeds and the
// merge is by (template_id, label, ordinal), so the result does not depend
// on the worker count.
inline InstantiateResult Instantiate(const std::vector<Template>& templates,
                                     const std::vector<SentenceCandidate>& candidates,
                                     const RenderTable& table, const GenConfig& config) {
  using generator_internal::PairJob;
  InstantiateResult result;
  std::map<std::string, const Template*> by_id;
  for (const auto& t : templates) by_id[t.id] = &t;
  std::map<std::string, std::vector<const SentenceCandidate*>> by_template;
  for (const auto& c : candidates) {
    if (!by_id.count(c.template_id)) {
      throw ValidationError("candidate " + c.id + " names unknown template " + c.template_id);
    }
    by_template[c.template_id].push_back(&c);
  }
  std::vector<PairJob> jobs;
  for (const auto& [id, t] : by_id) {
    auto it = by_template.find(id);
    if (it == by_template.end()) {
      result.log.push_back(id + ": no candidates survive review; skipped");
      continue;
    }
    const FeasibleSet feasible = FeasibleLabels(*t, config);
    result.feasible[id] = feasible;
    for (Label l : t->condition.MentionedLabels()) {
      if (!feasible.labels.count(l)) {
        result.log.push_back(id + ": label " + std::string(LabelName(l)) +
                             " infeasible under this config; skipped");
      }
    }
    for (Label l : feasible.labels) {
      PairJob job{t, l, {}, {}};
      for (const auto* c : it->second) (c->pool == Pool::kTest ? job.test : job.train).push_back(c);
      jobs.push_back(std::move(job));
    }
  }
  std::vector<std::vector<Problem>> outputs(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      try {
        outputs[i] = generator_internal::RunPair(jobs[i], config, table);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(config.workers, static_cast<int>(jobs.size())));
  std::vector<std::thread> threads;
  for (int i = 1; i < n; ++i) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& o : outputs) {
    for (auto& p : o) result.problems.push_back(std::move(p));
  }
  return result;
}

}  // namespace tempoforge

#endif  // TEMPOFORGE_GENERATOR_H_
