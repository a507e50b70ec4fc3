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

// Independent oracles and fixtures shared by the unit tests and the
// acceptance binary. The oracles share no code with what they check; the
// fixture loaders at the bottom drive the real pipeline.

#ifndef TEMPOFORGE_TESTS_ORACLES_H_
#define TEMPOFORGE_TESTS_ORACLES_H_

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tempoforge/candidates.h"
#include "tempoforge/config.h"
#include "tempoforge/generator.h"
#include "tempoforge/lexicon.h"
#include "tempoforge/render.h"
#include "tempoforge/template.h"

namespace tempoforge::testing {

// Zeller's congruence. 0 = Sunday.
inline int ZellerWeekday(int64_t y, int m, int d) {
  if (m < 3) {
    m += 12;
    y -= 1;
  }
  const int64_t k = y % 100, j = y / 100;
  const int64_t h = (d + (13 * (m + 1)) / 5 + k + k / 4 + j / 4 + 5 * j) % 7;  // 0 = Saturday
  return static_cast<int>((h + 6) % 7);
}

inline int64_t ChronoDays(int64_t y, int m, int d) {
  using namespace std::chrono;
  return sys_days{year{static_cast<int>(y)} / month{static_cast<unsigned>(m)} /
                  day{static_cast<unsigned>(d)}}
      .time_since_epoch()
      .count();
}

inline int64_t ChronoHours(int64_t y, int m, int d, int h) { return ChronoDays(y, m, d) * 24 + h; }

struct Ymd {
  int64_t y;
  int m;
  int d;
};

inline Ymd ChronoCivil(int64_t days) {
  using namespace std::chrono;
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  return {static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month())),
          static_cast<int>(static_cast<unsigned>(ymd.day()))};
}

// P(X >= k), X ~ Binomial(n, 1/3), as the exact ratio
// sum_{j>=k} C(n,j) 2^(n-j) / 3^n evaluated in 200-bit floating point.
inline double ExactTailOneThird(int64_t n, int64_t k) {
  using boost::multiprecision::cpp_int;
  using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;
  cpp_int num = 0, c = 1;  // c = C(n, j)
  for (int64_t j = 0; j <= n; ++j) {
    if (j > 0) c = c * (n - j + 1) / j;
    if (j >= k) num += c * (cpp_int(1) << static_cast<unsigned>(n - j));
  }
  cpp_int den = 1;
  for (int64_t i = 0; i < n; ++i) den *= 3;
  return static_cast<double>(Float(num) / Float(den));
}

// Five dates: two month ends, a leap day, Saturdays and Sundays.
inline const std::vector<Ymd>& ToyCalendar() {
  static const std::vector<Ymd> cal = {
      {2003, 2, 28}, {2003, 3, 1}, {2003, 3, 2}, {2004, 2, 29}, {2004, 3, 1}};
  return cal;
}

// Hand-written meaning of each demo-pack template over plain integers:
// intervals are magnitudes in one shared unit, time points are day numbers.
// nullopt for unknown ids.
inline std::optional<Label> DemoOracle(const std::string& id, const std::map<int, int64_t>& iv,
                                       const std::map<int, int64_t>& tp) {
  const Label E = Label::kEntailment, C = Label::kContradiction, N = Label::kNeutral;
  auto I = [&](int i) { return iv.at(i); };
  auto T = [&](int i) { return tp.at(i); };
  if (id == "interval_within") return I(1) <= I(2) ? E : N;
  if (id == "interval_took_exact") return I(1) == I(2) ? E : C;
  if (id == "interval_within_took_longer") return I(2) >= I(1) ? C : N;
  if (id == "completion_done") return E;
  if (id == "completion_not_done") return C;
  if (id == "completion_at_least") return I(2) <= I(1) ? E : C;
  if (id == "order_transitive") return E;
  if (id == "order_transitive_swapped") return C;
  if (id == "order_transitive_before_after") return N;
  if (id == "continuity_between") return T(1) <= T(3) && T(3) <= T(2) ? E : N;
  if (id == "continuity_for_interval") return T(1) <= T(2) && T(2) < T(1) + I(1) ? E : N;
  if (id == "timepoint_before") return T(1) < T(2) ? E : C;
  if (id == "timepoint_by") return T(1) <= T(2) ? E : N;
  if (id == "now_present") return E;
  if (id == "now_past") return N;
  if (id == "habit_between") return T(1) <= T(3) && T(3) <= T(2) ? C : N;
  if (id == "habit_since") return T(1) <= T(2) ? C : N;
  if (id == "habit_never_since") return T(1) <= T(2) ? C : N;
  if (id == "habit_once_then_never") return T(2) <= T(1) ? C : N;
  if (id == "yesterday_date") return T(2) == T(1) - 1 ? E : N;
  if (id == "yesterday_weekday") {
    const Ymd y = ChronoCivil(T(1) - 1);
    return ZellerWeekday(y.y, y.m, y.d) == 6 ? E : C;
  }
  return std::nullopt;
}

inline std::string DataPath(const std::string& rel) {
  return std::string(TEMPOFORGE_DATA_DIR) + "/" + rel;
}

struct Demo {
  std::vector<Template> templates;
  Lexicon lexicon;  // filtered with the default thresholds
  RenderTable table;
};

inline const Demo& LoadDemo() {
  static const Demo demo = [] {
    Demo d;
    const auto tax = Taxonomy::Parse(util::ReadFile(DataPath("taxonomy.tsv")));
    auto parsed = ParseTemplates(util::ReadFile(DataPath("demo_pack.tpl")), tax);
    if (!parsed.ok()) throw Error("demo pack does not parse");
    d.templates = std::move(parsed.templates);
    const GenConfig c;
    d.lexicon = FilterLexicon(LoadLexicon(DataPath("lexicon.tsv"), DataPath("names.txt"),
                                          DataPath("blocklist.txt")),
                              c.verb_min_freq, c.noun_min_freq);
    d.table = RenderTable::Parse(util::ReadFile(DataPath("render/ja.tsv")));
    return d;
  }();
  return demo;
}

inline const Template* FindTemplate(const std::vector<Template>& ts, const std::string& id) {
  for (const auto& t : ts) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

// Candidates -> permissive review with no decisions -> instantiate.
inline std::vector<Problem> GenerateCorpus(const GenConfig& config,
                                           const std::vector<Template>* templates = nullptr) {
  const Demo& d = LoadDemo();
  const auto& ts = templates ? *templates : d.templates;
  const auto cands = GenCandidates(ts, d.lexicon, config).candidates;
  const auto reviewed = ApplyReview(cands, {}, ReviewMode::kPermissive);
  return Instantiate(ts, reviewed, d.table, config).problems;
}

}  // namespace tempoforge::testing

#endif  // TEMPOFORGE_TESTS_ORACLES_H_
