// Copyright 2026 The Whodunit Authors.
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

#include "whodunit/align/dtw.h"

#include <algorithm>
#include <ostream>
#include <set>
#include <string_view>

#include "whodunit/error.h"

namespace whodunit::align {
namespace {

// Costs are sums of a handful of bounded rationals, so genuinely different
// path costs are far further apart than this.
constexpr double kTieTolerance = 1e-9;

}  // namespace

double CueCost(std::span<const std::string> sentence, std::span<const std::string> cue) {
  std::set<std::string_view> a(sentence.begin(), sentence.end());
  std::set<std::string_view> b(cue.begin(), cue.end());
  if (a.empty() && b.empty()) return 0.0;
  size_t common = 0;
  for (std::string_view t : a) common += b.count(t);
  const size_t united = a.size() + b.size() - common;
  return 1.0 - static_cast<double>(common) / static_cast<double>(united);
}

Alignment DtwAlign(std::span<const TokenList> utterances, std::span<const TokenList> cues,
                   double skip_penalty) {
  if (utterances.empty() || cues.empty()) throw Error("alignment needs non-empty sequences");
  if (!(skip_penalty >= 0)) throw Error("skip penalty must be non-negative");
  const size_t n = utterances.size();
  const size_t m = cues.size();
  const size_t stride = m + 1;

  std::vector<double> match(n * m);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) match[i * m + j] = CueCost(utterances[i], cues[j]);
  }

  // suffix[i][j]: cheapest way to align utterances i.. with cues j..
  std::vector<double> suffix((n + 1) * stride);
  for (size_t i = n + 1; i-- > 0;) {
    for (size_t j = m + 1; j-- > 0;) {
      double& cell = suffix[i * stride + j];
      if (i == n && j == m) {
        cell = 0;
      } else if (i == n) {
        cell = skip_penalty + suffix[i * stride + j + 1];
      } else if (j == m) {
        cell = skip_penalty + suffix[(i + 1) * stride + j];
      } else {
        cell = std::min({match[i * m + j] + suffix[(i + 1) * stride + j + 1],
                         skip_penalty + suffix[(i + 1) * stride + j],
                         skip_penalty + suffix[i * stride + j + 1]});
      }
    }
  }

  Alignment result;
  result.skip_penalty = skip_penalty;
  result.total_cost = suffix[0];
  size_t i = 0, j = 0;
  while (i < n || j < m) {
    const double best = suffix[i * stride + j];
    if (i < n && j < m &&
        match[i * m + j] + suffix[(i + 1) * stride + j + 1] <= best + kTieTolerance) {
      const double c = match[i * m + j];
      result.pairs.push_back({static_cast<int>(i), static_cast<int>(j), c});
      ++i;
      ++j;
    } else if (i < n && skip_penalty + suffix[(i + 1) * stride + j] <= best + kTieTolerance) {
      result.skipped_utterances.push_back(static_cast<int>(i));
      ++i;
    } else {
      result.skipped_cues.push_back(static_cast<int>(j));
      ++j;
    }
  }
  return result;
}

void WriteAlignmentCsv(std::ostream& out, const Alignment& alignment) {
  // Rows in path order: walk the three lists as a merge on (utterance, cue).
  out << "utterance_index,cue_index,cost\n";
  size_t p = 0, su = 0, sc = 0;
  int next_u = 0, next_c = 0;
  const auto& pairs = alignment.pairs;
  while (p < pairs.size() || su < alignment.skipped_utterances.size() ||
         sc < alignment.skipped_cues.size()) {
    if (p < pairs.size() && pairs[p].utterance == next_u && pairs[p].cue == next_c) {
      out << pairs[p].utterance << ',' << pairs[p].cue << ',' << pairs[p].cost << '\n';
      ++p;
      ++next_u;
      ++next_c;
    } else if (su < alignment.skipped_utterances.size() &&
               alignment.skipped_utterances[su] == next_u) {
      out << next_u << ",," << alignment.skip_penalty << '\n';
      ++su;
      ++next_u;
    } else if (sc < alignment.skipped_cues.size() && alignment.skipped_cues[sc] == next_c) {
      out << ',' << next_c << ',' << alignment.skip_penalty << '\n';
      ++sc;
      ++next_c;
    } else {
      throw Error("alignment lists are inconsistent");
    }
  }
}

}  // namespace whodunit::align
