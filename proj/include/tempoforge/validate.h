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

// Pack-level lints.
//   (a) warning: every template of a sub-fragment reaches the same single label
//   (b) warning: counterpart_of names a missing template
//   (c) error:   the condition mentions a label it can never produce
//   (d) warning: identical premises and label behavior in two templates

#ifndef TEMPOFORGE_VALIDATE_H_
#define TEMPOFORGE_VALIDATE_H_

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tempoforge/condition.h"
#include "tempoforge/config.h"
#include "tempoforge/sampler.h"
#include "tempoforge/template.h"

namespace tempoforge {

inline std::vector<Diagnostic> ValidatePack(const std::vector<Template>& templates,
                                            const GenConfig& config = GenConfig()) {
  std::vector<Diagnostic> out;
  auto warn = [&](const Template& t, std::string m) {
    out.push_back({Diagnostic::Severity::kWarning, t.id, t.pos, std::move(m)});
  };
  std::map<std::string, FeasibleSet> feasible;
  std::set<std::string> ids;
  for (const auto& t : templates) {
    ids.insert(t.id);
    feasible[t.id] = FeasibleLabels(t, config);
  }

  // (c)
  for (const auto& t : templates) {
    const auto& f = feasible[t.id];
    for (Label l : t.condition.MentionedLabels()) {
      if (f.labels.count(l)) continue;
      const std::string m = std::string(LabelName(l)) + " is unreachable: no binding satisfies its branch" +
                            (f.exact ? "" : " (by sampling, not exhaustive)");
      out.push_back({f.exact ? Diagnostic::Severity::kError : Diagnostic::Severity::kWarning,
                     t.id, t.pos, m});
    }
  }

  // (a)
  std::map<std::pair<std::string, std::string>, std::vector<const Template*>> by_sub;
  for (const auto& t : templates) by_sub[{t.main_fragment, t.sub_fragment}].push_back(&t);
  for (const auto& [key, members] : by_sub) {
    std::set<Label> reach;
    for (const auto* t : members) {
      const auto& f = feasible[t->id].labels;
      reach.insert(f.begin(), f.end());
    }
    if (reach.size() == 1) {
      warn(*members.front(), "every template of '" + key.first + " / " + key.second +
                                 "' yields only " + std::string(LabelName(*reach.begin())) +
                                 "; add a counterpart with a different label");
    }
  }

  // (b)
  for (const auto& t : templates) {
    if (t.counterpart_of && !ids.count(*t.counterpart_of)) {
      warn(t, "counterpart_of names missing template '" + *t.counterpart_of + "'");
    }
  }

  // (d)
  for (size_t i = 0; i < templates.size(); ++i) {
    for (size_t j = i + 1; j < templates.size(); ++j) {
      const auto& a = templates[i];
      const auto& b = templates[j];
      if (a.premises == b.premises && feasible[a.id].labels == feasible[b.id].labels) {
        warn(b, "premises duplicate template '" + a.id + "' with the same label behavior");
      }
    }
  }
  return out;
}

}  // namespace tempoforge

#endif  // TEMPOFORGE_VALIDATE_H_
