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

#ifndef WHODUNIT_ALIGN_DTW_H_
#define WHODUNIT_ALIGN_DTW_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace whodunit::align {

using TokenList = std::vector<std::string>;

inline constexpr double kDefaultSkipPenalty = 0.5;

struct AlignedPair {
  int utterance = 0;
  int cue = 0;
  double cost = 0;

  bool operator==(const AlignedPair&) const = default;
};

// A monotone alignment between screenplay utterances and caption cues.
struct Alignment {
  std::vector<AlignedPair> pairs;
  std::vector<int> skipped_utterances;
  std::vector<int> skipped_cues;
  double total_cost = 0;
  double skip_penalty = kDefaultSkipPenalty;
};

// 1 - Jaccard similarity of the two token sets; two empty sets cost 0.
double CueCost(std::span<const std::string> sentence, std::span<const std::string> cue);

// Minimum-cost monotone alignment under the moves match(i, j) (cost CueCost),
// skip-utterance and skip-cue (each `skip_penalty`). Among optimal paths the
// one that prefers match, then skip-utterance, then skip-cue at the earliest
// point of divergence is returned, so matches land as early as possible.
// total_cost is the optimum of the suffix recursion, summed from the last move
// back to the first. Throws Error if either sequence is empty or the penalty is negative.
Alignment DtwAlign(std::span<const TokenList> utterances, std::span<const TokenList> cues,
                   double skip_penalty = kDefaultSkipPenalty);

// CSV report `utterance_index,cue_index,cost`; skips leave the other index
// empty and carry the skip penalty as cost.
void WriteAlignmentCsv(std::ostream& out, const Alignment& alignment);

}  // namespace whodunit::align

#endif  // WHODUNIT_ALIGN_DTW_H_
