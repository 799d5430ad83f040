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

#ifndef WHODUNIT_ALIGN_TIMELINE_H_
#define WHODUNIT_ALIGN_TIMELINE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "whodunit/align/dtw.h"
#include "whodunit/corpus/sentence.h"

namespace whodunit::align {

// Token lists of the utterances of `units`, in order. Alignment utterance
// indices refer to positions in this list.
std::vector<TokenList> UtteranceTokens(std::span<const corpus::SentenceUnit> units);
std::vector<TokenList> CueTokens(std::span<const corpus::CaptionCue> cues);

// Returns a copy of `units` with every time span set. Matched utterances take
// their cue's span. Runs of untimed units (unmatched utterances and scene
// descriptions) split the gap between their timed neighbours in proportion to
// token counts; leading and trailing runs use the episode start and end as
// the missing neighbour. Boundaries are rounded down cumulatively so each gap
// is tiled exactly. Throws Error when no utterance was matched.
std::vector<corpus::SentenceUnit> AllocateTimestamps(std::span<const corpus::SentenceUnit> units,
                                                     const Alignment& alignment,
                                                     std::span<const corpus::CaptionCue> cues,
                                                     int64_t episode_start_ms,
                                                     int64_t episode_end_ms);

}  // namespace whodunit::align

#endif  // WHODUNIT_ALIGN_TIMELINE_H_
