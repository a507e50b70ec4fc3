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

// Temporal bindings for one problem, and the set of labels a template can
// reach.

#ifndef TEMPOFORGE_SAMPLER_H_
#define TEMPOFORGE_SAMPLER_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tempoforge/condition.h"
#include "tempoforge/config.h"
#include "tempoforge/evaluate.h"
#include "tempoforge/random.h"
#include "tempoforge/template.h"
#include "tempoforge/temporal.h"

namespace tempoforge {

inline constexpr std::string_view kShortSpanFallbackFlag = "short_span_fallback";

struct TemporalDraw {
  TemporalBindings bindings;
  std::optional<TimeFormat> format;
  std::optional<SpanMode> span;
  std::vector<std::string> flags;
};

// Time points for `count` slots under random span. When `near_fraction` > 0
// each later point may instead copy an earlier one shifted by -2..2 of a
// format unit, so equality conditions are hit at a usable rate.
inline std::vector<TimePoint> SampleTimePointsRandom(TimeFormat format, int count,
                                                     double near_fraction, Rng& rng) {
  std::vector<TimePoint> out;
  for (int i = 0; i < count; ++i) {
    TimePoint tp = SampleTimePoint(rng);
    if (i > 0 && rng.Bernoulli(near_fraction)) {
      const TimePoint& base = out[rng.Index(out.size())];
      const auto units = format.Units();
      const Unit u = units[rng.Index(units.size())];
      const int64_t d = rng.UniformInt(-2, 2);
      const TimePoint moved = AddToInstant(base, {d, u});
      if (kWindowStart <= moved && moved < kWindowEnd) tp = moved;
    }
    out.push_back(tp);
  }
  return out;
}

// One draw of every temporal slot for a fixed format, unit and span.
inline TemporalDraw DrawTemporalFixed(const SlotProfile& profile, TimeFormat format,
                                      std::optional<Unit> unit, SpanMode span,
                                      double near_fraction, Rng& rng) {
  TemporalDraw d;
  if (!profile.HasTemporal()) return d;
  d.format = format;
  d.span = span;
  const int n_tp = static_cast<int>(profile.timepoints.size());
  if (n_tp > 0) {
    SpanMode tp_span = span;
    if (span == SpanMode::kShort && format.Smallest() == Unit::kYear) {
      tp_span = SpanMode::kRandom;
      d.span = SpanMode::kRandom;
      d.flags.emplace_back(kShortSpanFallbackFlag);
    }
    const auto points = tp_span == SpanMode::kShort
                            ? SampleTimePointsShort(format, n_tp, rng)
                            : SampleTimePointsRandom(format, n_tp, near_fraction, rng);
    int i = 0;
    for (int idx : profile.timepoints) {
      d.bindings[{TemporalKind::kTimePoint, idx}] = Truncate(points[i++], format);
    }
  }
  for (int idx : profile.intervals) {
    d.bindings[{TemporalKind::kInterval, idx}] = SampleInterval(*unit, span, rng);
  }
  return d;
}

// Uniform over spans, then over compatible (format, unit) pairs.
inline TemporalDraw DrawTemporal(const SlotProfile& profile,
                                 const std::vector<FormatChoice>& choices,
                                 const std::vector<SpanMode>& spans, double near_fraction,
                                 Rng& rng) {
  if (!profile.HasTemporal()) return {};
  const SpanMode span = spans[rng.Index(spans.size())];
  const FormatChoice& choice = choices[rng.Index(choices.size())];
  const auto unit = choice.units[rng.Index(choice.units.size())];
  return DrawTemporalFixed(profile, choice.format, unit, span, near_fraction, rng);
}

struct FeasibleSet {
  std::set<Label> labels;
  bool exact = true;

  void Merge(const FeasibleSet& o) {
    labels.insert(o.labels.begin(), o.labels.end());
    exact = exact && o.exact;
  }
};

namespace sampler_internal {

inline int64_t DomainSize(const SlotProfile& p, TimeFormat format, SpanMode span,
                          int64_t cap) {
  const int64_t mags = span == SpanMode::kShort ? 3 : 9;
  int64_t size = 1;
  auto mul = [&](int64_t x) {
    size = size > cap / x ? cap + 1 : size * x;
  };
  for (size_t i = 0; i < p.timepoints.size(); ++i) mul(TruncationCount(format));
  for (size_t i = 0; i < p.intervals.size(); ++i) mul(mags);
  return size;
}

}  // namespace sampler_internal

// Labels reachable for one (format, unit, span). Exhaustive when the
// binding domain has at most `cap` elements: every truncation tuple (under
// short span, tuples whose pairwise gap fits the window) times magnitudes
// 1..9 (1..3 short). Otherwise `samples` draws of the generator's own
// sampler, reported as approximate. Bindings whose arithmetic clamps or
// overflows are never emitted by the generator and are ignored here.
inline FeasibleSet FeasibleLabels(const Template& t, TimeFormat format,
                                  std::optional<Unit> unit, SpanMode span, int64_t cap,
                                  int samples, double near_fraction = 0.25) {
  const SlotProfile p = ProfileOf(t);
  FeasibleSet out;
  if (!p.HasTemporal()) {
    out.labels.insert(Evaluate(t.condition, {}).label);
    return out;
  }
  // A constant condition needs no search.
  if (t.condition.branches.empty()) {
    out.labels.insert(t.condition.fallback);
    return out;
  }
  const bool short_tp = span == SpanMode::kShort && !p.timepoints.empty() &&
                        format.Smallest() != Unit::kYear;
  const SpanMode iv_span = span;
  if (sampler_internal::DomainSize(p, format, span, cap) <= cap) {
    const auto truncations = p.timepoints.empty() ? std::vector<TruncatedTimePoint>{}
                                                  : EnumerateTruncations(format);
    const int64_t mags = iv_span == SpanMode::kShort ? 3 : 9;
    const int64_t window = short_tp ? ShortWindow(format).magnitude : 0;
    const std::vector<int> tps(p.timepoints.begin(), p.timepoints.end());
    const std::vector<int> ivs(p.intervals.begin(), p.intervals.end());
    std::vector<int64_t> radix;
    for (size_t i = 0; i < tps.size(); ++i) radix.push_back(static_cast<int64_t>(truncations.size()));
    for (size_t i = 0; i < ivs.size(); ++i) radix.push_back(mags);
    std::vector<int64_t> digit(radix.size(), 0);
    TemporalBindings b;
    while (true) {
      bool in_window = true;
      for (size_t i = 0; i < tps.size(); ++i) {
        b[{TemporalKind::kTimePoint, tps[i]}] = truncations[digit[i]];
      }
      if (short_tp) {
        for (size_t i = 0; i < tps.size() && in_window; ++i) {
          for (size_t j = i + 1; j < tps.size(); ++j) {
            const int64_t gap = Diff(truncations[digit[i]], truncations[digit[j]]);
            if (gap > window || gap < -window) {
              in_window = false;
              break;
            }
          }
        }
      }
      if (in_window) {
        for (size_t i = 0; i < ivs.size(); ++i) {
          b[{TemporalKind::kInterval, ivs[i]}] =
              IntervalValue{digit[tps.size() + i] + 1, *unit};
        }
        const Evaluation e = Evaluate(t.condition, b);
        if (!e.adjusted) out.labels.insert(e.label);
      }
      size_t pos = 0;
      while (pos < radix.size() && ++digit[pos] == radix[pos]) digit[pos++] = 0;
      if (pos == radix.size()) break;
      if (out.labels.size() == t.condition.MentionedLabels().size()) break;
    }
    return out;
  }
  out.exact = false;
  Rng rng(StableHash(std::string("feasible"), t.id, format.Name(),
                     unit ? static_cast<int>(*unit) : -1, static_cast<int>(span)));
  for (int i = 0; i < samples; ++i) {
    const TemporalDraw d = DrawTemporalFixed(p, format, unit, span, near_fraction, rng);
    const Evaluation e = Evaluate(t.condition, d.bindings);
    if (!e.adjusted) out.labels.insert(e.label);
    if (out.labels.size() == t.condition.MentionedLabels().size()) break;
  }
  return out;
}

// Union over everything the generator may pick under `config`.
inline FeasibleSet FeasibleLabels(const Template& t, const GenConfig& config) {
  FeasibleSet out;
  const SlotProfile p = ProfileOf(t);
  if (!p.HasTemporal()) return FeasibleLabels(t, TimeFormat(), std::nullopt, SpanMode::kRandom,
                                              config.enumeration_cap, config.mc_samples);
  for (const auto& choice : CompatibleChoices(t, config.formats)) {
    for (const auto& unit : choice.units) {
      for (SpanMode span : config.spans) {
        out.Merge(FeasibleLabels(t, choice.format, unit, span, config.enumeration_cap,
                                 config.mc_samples, config.near_fraction));
      }
    }
  }
  return out;
}

}  // namespace tempoforge

#endif  // TEMPOFORGE_SAMPLER_H_
