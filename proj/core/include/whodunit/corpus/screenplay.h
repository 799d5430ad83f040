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

#ifndef WHODUNIT_CORPUS_SCREENPLAY_H_
#define WHODUNIT_CORPUS_SCREENPLAY_H_

#include <string>
#include <string_view>
#include <vector>

#include "whodunit/corpus/sentence.h"

namespace whodunit::corpus {

// Parses the line-oriented screenplay format:
//
//   ## INT. GRISSOM'S OFFICE - NIGHT      scene heading (produces no units)
//   NICK: okay, Warrick, hit it          speaker cue with dialog
//   NICK:                                 cue whose dialog is on the next line
//   more dialog                           continues the most recent cue
//   (Warrick starts the crane            scene description, may span lines
//    support.)
//
// Each content line is split into sentences and tokenized. Units come back
// unannotated (token labels kNone, no case id, no timestamps).
// Throws ParseError with the 1-based line number on malformed input.
std::vector<SentenceUnit> ParseScreenplay(std::string_view text, std::string_view episode_id);

}  // namespace whodunit::corpus

#endif  // WHODUNIT_CORPUS_SCREENPLAY_H_
