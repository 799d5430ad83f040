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

#ifndef WHODUNIT_CORPUS_SRT_H_
#define WHODUNIT_CORPUS_SRT_H_

#include <string_view>
#include <vector>

#include "whodunit/corpus/sentence.h"

namespace whodunit::corpus {

// Parses SubRip blocks (`index`, `HH:MM:SS,mmm --> HH:MM:SS,mmm`, text lines).
// Multi-line cue text is joined with single spaces. Throws ParseError naming
// the block's line on malformed timestamps, non-increasing indices,
// end <= start, or start times that move backwards.
std::vector<CaptionCue> ParseSrt(std::string_view text);

}  // namespace whodunit::corpus

#endif  // WHODUNIT_CORPUS_SRT_H_
