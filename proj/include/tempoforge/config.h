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

// Generation config. Every field has a key; the same keys are accepted in
// config files (key = value), as TEMPOFORGE_<KEY> environment variables and
// as --<key> flags.

#ifndef TEMPOFORGE_CONFIG_H_
#define TEMPOFORGE_CONFIG_H_

#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tempoforge/temporal.h"
#include "tempoforge/util.h"

namespace tempoforge {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class ReviewMode : uint8_t { kStrict, kPermissive };

struct GenConfig {
  uint64_t seed = 1;
  int k = 10;  // problems per (template, feasible label)
  std::vector<TimeFormat> formats = TimeFormat::All();
  std::vector<SpanMode> spans = {SpanMode::kRandom, SpanMode::kShort};
  int max_attempts = 5000;  // per problem
  int fan_out = 30;         // content candidates per template
  double test_fraction = 0.3;
  int64_t verb_min_freq = 1000;
  int64_t noun_min_freq = 100;
  bool frequency_weighted = false;
  bool allow_noun_reuse = false;
  double near_fraction = 0.25;
  ReviewMode review_mode = ReviewMode::kStrict;
  int workers = 1;
  int64_t enumeration_cap = 200000;
  int mc_samples = 4000;
  double alpha = 0.01;
  int min_count = 20;
  bool sample_std = false;
};

namespace config_internal {

inline int64_t RequireInt(std::string_view key, std::string_view v, int64_t lo) {
  auto n = util::ParseInt<int64_t>(util::Trim(v));
  if (!n || *n < lo) {
    throw ConfigError(std::string(key) + " must be an integer >= " + std::to_string(lo));
  }
  return *n;
}

inline double RequireFraction(std::string_view key, std::string_view v, bool open) {
  auto d = util::ParseDouble(util::Trim(v));
  if (!d || *d < 0.0 || *d > 1.0 || (open && (*d == 0.0 || *d == 1.0))) {
    throw ConfigError(std::string(key) + " must be a number in " +
                      (open ? "(0, 1)" : "[0, 1]"));
  }
  return *d;
}

inline bool RequireBool(std::string_view key, std::string_view v) {
  v = util::Trim(v);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(std::string(key) + " must be true or false");
}

// Shortest text that parses back to the same double.
inline std::string FormatDouble(double d) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  return std::string(buf, end);
}

}  // namespace config_internal

inline const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> keys = {
      "seed", "k", "formats", "spans", "max_attempts", "fan_out", "test_fraction",
      "verb_min_freq", "noun_min_freq", "frequency_weighted", "allow_noun_reuse",
      "near_fraction", "review_mode", "workers", "enumeration_cap", "mc_samples",
      "alpha", "min_count", "sample_std"};
  return keys;
}

inline void SetConfigValue(GenConfig& c, std::string_view key, std::string_view value) {
  using namespace config_internal;
  if (key == "seed") {
    auto n = util::ParseInt<uint64_t>(util::Trim(value));
    if (!n) throw ConfigError("seed must be a nonnegative integer");
    c.seed = *n;
  } else if (key == "k") {
    c.k = static_cast<int>(RequireInt(key, value, 1));
  } else if (key == "formats") {
    c.formats.clear();
    for (const auto& name : util::Split(value, ',')) {
      auto f = TimeFormat::Parse(util::Trim(name));
      if (!f) throw ConfigError("unknown time format '" + std::string(util::Trim(name)) + "'");
      c.formats.push_back(*f);
    }
    if (c.formats.empty()) throw ConfigError("formats must not be empty");
  } else if (key == "spans") {
    c.spans.clear();
    for (const auto& name : util::Split(value, ',')) {
      auto s = ParseSpan(util::Trim(name));
      if (!s) throw ConfigError("unknown span '" + std::string(util::Trim(name)) + "'");
      c.spans.push_back(*s);
    }
    if (c.spans.empty()) throw ConfigError("spans must not be empty");
  } else if (key == "max_attempts") {
    c.max_attempts = static_cast<int>(RequireInt(key, value, 1));
  } else if (key == "fan_out") {
    c.fan_out = static_cast<int>(RequireInt(key, value, 1));
  } else if (key == "test_fraction") {
    c.test_fraction = RequireFraction(key, value, false);
  } else if (key == "verb_min_freq") {
    c.verb_min_freq = RequireInt(key, value, 0);
  } else if (key == "noun_min_freq") {
    c.noun_min_freq = RequireInt(key, value, 0);
  } else if (key == "frequency_weighted") {
    c.frequency_weighted = RequireBool(key, value);
  } else if (key == "allow_noun_reuse") {
    c.allow_noun_reuse = RequireBool(key, value);
  } else if (key == "near_fraction") {
    c.near_fraction = RequireFraction(key, value, false);
  } else if (key == "review_mode") {
    const auto v = util::Trim(value);
    if (v == "strict") c.review_mode = ReviewMode::kStrict;
    else if (v == "permissive") c.review_mode = ReviewMode::kPermissive;
    else throw ConfigError("review_mode must be strict or permissive");
  } else if (key == "workers") {
    c.workers = static_cast<int>(RequireInt(key, value, 1));
  } else if (key == "enumeration_cap") {
    c.enumeration_cap = RequireInt(key, value, 1);
  } else if (key == "mc_samples") {
    c.mc_samples = static_cast<int>(RequireInt(key, value, 1));
  } else if (key == "alpha") {
    c.alpha = RequireFraction(key, value, true);
  } else if (key == "min_count") {
    c.min_count = static_cast<int>(RequireInt(key, value, 1));
  } else if (key == "sample_std") {
    c.sample_std = RequireBool(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

// Resolved config as key/value pairs. `workers` is left out: it never
// changes output bytes.
inline std::map<std::string, std::string> ConfigToMap(const GenConfig& c) {
  using config_internal::FormatDouble;
  std::vector<std::string> formats, spans;
  for (auto f : c.formats) formats.push_back(f.Name());
  for (auto s : c.spans) spans.emplace_back(SpanName(s));
  return {
      {"seed", std::to_string(c.seed)},
      {"k", std::to_string(c.k)},
      {"formats", util::Join(formats, ",")},
      {"spans", util::Join(spans, ",")},
      {"max_attempts", std::to_string(c.max_attempts)},
      {"fan_out", std::to_string(c.fan_out)},
      {"test_fraction", FormatDouble(c.test_fraction)},
      {"verb_min_freq", std::to_string(c.verb_min_freq)},
      {"noun_min_freq", std::to_string(c.noun_min_freq)},
      {"frequency_weighted", c.frequency_weighted ? "true" : "false"},
      {"allow_noun_reuse", c.allow_noun_reuse ? "true" : "false"},
      {"near_fraction", FormatDouble(c.near_fraction)},
      {"review_mode", c.review_mode == ReviewMode::kStrict ? "strict" : "permissive"},
      {"enumeration_cap", std::to_string(c.enumeration_cap)},
      {"mc_samples", std::to_string(c.mc_samples)},
      {"alpha", FormatDouble(c.alpha)},
      {"min_count", std::to_string(c.min_count)},
      {"sample_std", c.sample_std ? "true" : "false"},
  };
}

// key = value lines; '#' comments.
inline void ApplyConfigText(GenConfig& c, std::string_view text) {
  int line_no = 0;
  for (const auto& raw : util::Lines(text)) {
    ++line_no;
    const auto line = util::Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no);
    try {
      SetConfigValue(c, util::Trim(line.substr(0, eq)), util::Trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
}

inline std::string EnvKey(std::string_view key) {
  std::string out = "TEMPOFORGE_";
  for (char ch : key) out += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

// Applies TEMPOFORGE_<KEY> variables; `getenv` is injectable for tests.
template <typename Getenv>
void ApplyConfigEnv(GenConfig& c, Getenv&& getenv) {
  for (const auto& key : ConfigKeys()) {
    const char* v = getenv(EnvKey(key).c_str());
    if (v != nullptr) SetConfigValue(c, key, v);
  }
}

inline void ApplyConfigEnv(GenConfig& c) {
  ApplyConfigEnv(c, [](const char* name) { return std::getenv(name); });
}

}  // namespace tempoforge

#endif  // TEMPOFORGE_CONFIG_H_
