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

// Token/label association screening. Each token seen in at least
// `min_count` problems is tested against p(label | token) = 1/3 with a
// one-sided binomial test at its most frequent label; the Bonferroni divisor
// is three tests per tested token.

#ifndef TEMPOFORGE_ARTIFACTS_H_
#define TEMPOFORGE_ARTIFACTS_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tempoforge/condition.h"
#include "tempoforge/generator.h"
#include "tempoforge/util.h"

namespace tempoforge {

using Tokenizer = std::function<std::vector<std::string>(std::string_view)>;

inline std::vector<std::string> WhitespaceTokenizer(std::string_view text) {
  return util::SplitWhitespace(text);
}

// Distinct tokens of premises and hypothesis, sorted.
inline std::vector<std::string> Tokenize(const Problem& p,
                                         const Tokenizer& tokenizer = WhitespaceTokenizer) {
  std::set<std::string> seen;
  for (const auto& s : p.premises) {
    for (auto& t : tokenizer(s)) seen.insert(std::move(t));
  }
  for (auto& t : tokenizer(p.hypothesis)) seen.insert(std::move(t));
  return {seen.begin(), seen.end()};
}

// P(X >= k) for X ~ Binomial(n, p). The pmf is anchored at k (or k - 1)
// through lgammal and the rest of the tail is summed by term ratios, all
// in long double. Below the mean the complement is summed instead.
inline double BinomialTail(int64_t n, int64_t k, double p) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("binomial_tail: need 0 <= k <= n");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("binomial_tail: need 0 < p < 1");
  if (k == 0) return 1.0;
  const long double lp = p, lq = 1.0L - lp;
  const long double ln = static_cast<long double>(n);
  auto log_pmf = [&](int64_t j) {
    const long double lj = static_cast<long double>(j);
    return std::lgamma(ln + 1) - std::lgamma(lj + 1) - std::lgamma(ln - lj + 1) +
           lj * std::log(lp) + (ln - lj) * std::log(lq);
  };
  const long double mean = ln * lp;
  if (static_cast<long double>(k) >= mean) {
    long double term = 1.0L, sum = 1.0L;
    for (int64_t j = k; j < n; ++j) {
      term *= static_cast<long double>(n - j) / static_cast<long double>(j + 1) * (lp / lq);
      sum += term;
      if (term < sum * 1e-25L) break;
    }
    return static_cast<double>(std::exp(log_pmf(k) + std::log(sum)));
  }
  long double term = 1.0L, sum = 1.0L;
  for (int64_t j = k - 1; j > 0; --j) {
    term *= static_cast<long double>(j) / static_cast<long double>(n - j + 1) * (lq / lp);
    sum += term;
    if (term < sum * 1e-25L) break;
  }
  const long double lower = std::exp(log_pmf(k - 1) + std::log(sum));
  return static_cast<double>(std::max(0.0L, 1.0L - lower));
}

struct TokenStat {
  std::string token;
  int64_t n = 0;
  std::array<int64_t, 3> counts{};  // Entailment, Contradiction, Neutral
  double p_hat = 0.0;
  Label argmax = Label::kEntailment;
  double p_value = 1.0;
  bool flagged = false;
};

struct BoundaryPoint {
  int64_t n = 0;
  double p_hat = 0.0;  // smallest flaggable c / n
};

struct ArtifactReport {
  std::vector<TokenStat> stats;
  double alpha = 0.01;
  int64_t num_tests = 0;
  int min_count = 20;
  double threshold = 0.0;
  std::vector<BoundaryPoint> boundary;

  int64_t NumFlagged() const {
    return std::count_if(stats.begin(), stats.end(), [](const TokenStat& s) { return s.flagged; });
  }
};

// Smallest c with BinomialTail(n, c, 1/3) < threshold, or n + 1.
inline int64_t MinFlaggableCount(int64_t n, double threshold) {
  int64_t lo = 0, hi = n + 1;
  while (lo < hi) {
    const int64_t mid = (lo + hi) / 2;
    if (BinomialTail(n, mid, 1.0 / 3.0) < threshold) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

inline ArtifactReport Analyze(const std::vector<Problem>& problems, double alpha, int min_count,
                              const Tokenizer& tokenizer = WhitespaceTokenizer) {
  if (problems.empty()) throw ValidationError("analyze needs at least one problem");
  ArtifactReport r;
  r.alpha = alpha;
  r.min_count = min_count;
  std::map<std::string, std::array<int64_t, 3>> counts;
  for (const auto& p : problems) {
    for (const auto& tok : Tokenize(p, tokenizer)) counts[tok][static_cast<int>(p.gold)]++;
  }
  int64_t max_n = 0;
  for (const auto& [tok, c] : counts) {
    const int64_t n = c[0] + c[1] + c[2];
    if (n < min_count) continue;
    TokenStat s;
    s.token = tok;
    s.n = n;
    s.counts = c;
    int best = 0;
    for (int i = 1; i < 3; ++i) {
      if (c[i] > c[best]) best = i;
    }
    s.argmax = static_cast<Label>(best);
    s.p_hat = static_cast<double>(c[best]) / static_cast<double>(n);
    s.p_value = BinomialTail(n, c[best], 1.0 / 3.0);
    r.stats.push_back(std::move(s));
    max_n = std::max(max_n, n);
  }
  r.num_tests = 3 * static_cast<int64_t>(r.stats.size());
  r.threshold = r.num_tests > 0 ? alpha / static_cast<double>(r.num_tests) : alpha;
  for (auto& s : r.stats) s.flagged = s.p_value < r.threshold;
  std::sort(r.stats.begin(), r.stats.end(), [](const TokenStat& a, const TokenStat& b) {
    if (a.p_value != b.p_value) return a.p_value < b.p_value;
    return a.token < b.token;
  });
  // Boundary samples: every n up to 100, then geometric steps.
  for (int64_t n = std::max<int64_t>(min_count, 1); n <= max_n;
       n = n < 100 ? n + 1 : std::max(n + 1, static_cast<int64_t>(n * 1.05))) {
    const int64_t c = MinFlaggableCount(n, r.threshold);
    if (c <= n) r.boundary.push_back({n, static_cast<double>(c) / static_cast<double>(n)});
  }
  return r;
}

namespace artifacts_internal {

inline std::string Fmt(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace artifacts_internal

inline std::string ReportTsv(const ArtifactReport& r) {
  using artifacts_internal::Fmt;
  std::string out = "# alpha=" + Fmt("%g", r.alpha) + " num_tests=" + std::to_string(r.num_tests) +
                    " threshold=" + Fmt("%.6e", r.threshold) +
                    " min_count=" + std::to_string(r.min_count) + "\n";
  out += "token\tn\tc_E\tc_C\tc_N\tp_hat\targmax\tp_value\tflagged\n";
  for (const auto& s : r.stats) {
    out += s.token + "\t" + std::to_string(s.n) + "\t" + std::to_string(s.counts[0]) + "\t" +
           std::to_string(s.counts[1]) + "\t" + std::to_string(s.counts[2]) + "\t" +
           Fmt("%.6f", s.p_hat) + "\t" + std::string(LabelName(s.argmax)) + "\t" +
           Fmt("%.6e", s.p_value) + "\t" + (s.flagged ? "true" : "false") + "\n";
  }
  return out;
}

// Plot data: token rows (n, p_hat, flagged) and boundary rows.
inline std::string PlotTsv(const ArtifactReport& r) {
  using artifacts_internal::Fmt;
  std::string out = "kind\tlabel\tn\tp_hat\tflagged\n";
  for (const auto& s : r.stats) {
    out += "token\t" + s.token + "\t" + std::to_string(s.n) + "\t" + Fmt("%.6f", s.p_hat) + "\t" +
           (s.flagged ? "true" : "false") + "\n";
  }
  for (const auto& b : r.boundary) {
    out += "boundary\t-\t" + std::to_string(b.n) + "\t" + Fmt("%.6f", b.p_hat) + "\t-\n";
  }
  return out;
}

}  // namespace tempoforge

#endif  // TEMPOFORGE_ARTIFACTS_H_
