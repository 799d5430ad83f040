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

#include "whodunit/align/timeline.h"

#include <algorithm>

#include "whodunit/corpus/tokenize.h"
#include "whodunit/error.h"

namespace whodunit::align {

using corpus::SentenceKind;
using corpus::SentenceUnit;

std::vector<TokenList> UtteranceTokens(std::span<const SentenceUnit> units) {
  std::vector<TokenList> out;
  for (const SentenceUnit& u : units) {
    if (u.kind == SentenceKind::kUtterance) out.push_back(u.tokens);
  }
  return out;
}

std::vector<TokenList> CueTokens(std::span<const corpus::CaptionCue> cues) {
  std::vector<TokenList> out;
  out.reserve(cues.size());
  for (const auto& c : cues) out.push_back(corpus::Tokenize(c.text));
  return out;
}

namespace {

// Splits [begin, end] over units[first, last) proportionally to token counts.
void FillGap(std::vector<SentenceUnit>& units, size_t first, size_t last, int64_t begin,
             int64_t end) {
  if (first >= last) return;
  end = std::max(begin, end);
  int64_t total = 0;
  for (size_t k = first; k < last; ++k) total += static_cast<int64_t>(units[k].tokens.size());
  const int64_t count = static_cast<int64_t>(last - first);
  const int64_t length = end - begin;
  int64_t cumulative = 0;
  int64_t start = begin;
  for (size_t k = first; k < last; ++k) {
    cumulative += total > 0 ? static_cast<int64_t>(units[k].tokens.size()) : 1;
    const int64_t denom = total > 0 ? total : count;
    const int64_t stop = k + 1 == last ? end : begin + (length * cumulative) / denom;
    units[k].start_ms = start;
    units[k].end_ms = stop;
    start = stop;
  }
}

}  // namespace

std::vector<SentenceUnit> AllocateTimestamps(std::span<const SentenceUnit> units,
                                             const Alignment& alignment,
                                             std::span<const corpus::CaptionCue> cues,
                                             int64_t episode_start_ms, int64_t episode_end_ms) {
  if (alignment.pairs.empty()) throw Error("alignment matched no utterance");
  std::vector<SentenceUnit> out(units.begin(), units.end());
  for (auto& u : out) {
    u.start_ms.reset();
    u.end_ms.reset();
  }

  std::vector<size_t> utterance_pos;
  for (size_t k = 0; k < out.size(); ++k) {
    if (out[k].kind == SentenceKind::kUtterance) utterance_pos.push_back(k);
  }
  std::vector<bool> timed(out.size(), false);
  for (const AlignedPair& p : alignment.pairs) {
    if (p.utterance < 0 || static_cast<size_t>(p.utterance) >= utterance_pos.size() ||
        p.cue < 0 || static_cast<size_t>(p.cue) >= cues.size()) {
      throw Error("alignment pair out of range");
    }
    const size_t k = utterance_pos[p.utterance];
    out[k].start_ms = cues[p.cue].start_ms;
    out[k].end_ms = cues[p.cue].end_ms;
    timed[k] = true;
  }

  size_t run_start = 0;
  int64_t prev_end = episode_start_ms;
  for (size_t k = 0; k <= out.size(); ++k) {
    if (k < out.size() && !timed[k]) continue;
    if (k == out.size()) {
      FillGap(out, run_start, k, prev_end, std::max(prev_end, episode_end_ms));
    } else {
      const int64_t next_start = *out[k].start_ms;
      FillGap(out, run_start, k, std::min(prev_end, next_start), next_start);
      prev_end = *out[k].end_ms;
    }
    run_start = k + 1;
  }
  return out;
}

}  // namespace whodunit::align
