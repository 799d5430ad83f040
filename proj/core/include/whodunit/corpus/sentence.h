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

#ifndef WHODUNIT_CORPUS_SENTENCE_H_
#define WHODUNIT_CORPUS_SENTENCE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace whodunit::corpus {

enum class SentenceKind { kUtterance, kSceneDescription };

// Token-level entity annotation.
enum class TokenLabel { kNone, kPerpetrator, kSuspect, kOther };

enum class CrimeType { kMurder, kAccident, kSuicide, kOther };

// One screenplay sentence: a spoken utterance or a scene description.
struct SentenceUnit {
  std::string episode_id;
  std::optional<int> case_id;  // nullopt marks a sentence irrelevant to any case
  int seq_index = 0;
  SentenceKind kind = SentenceKind::kUtterance;
  std::optional<std::string> speaker;  // present iff kind == kUtterance
  std::vector<std::string> tokens;
  std::vector<TokenLabel> token_labels;
  int gold_label = 0;
  std::optional<int64_t> start_ms;
  std::optional<int64_t> end_ms;

  bool operator==(const SentenceUnit&) const = default;
};

// A time-stamped subtitle block.
struct CaptionCue {
  int index = 0;
  int64_t start_ms = 0;
  int64_t end_ms = 0;
  std::string text;

  bool operator==(const CaptionCue&) const = default;
};

// One storyline of an episode; `sentences` index into the episode's units.
struct Case {
  std::string episode_id;
  int case_id = 0;
  CrimeType crime_type = CrimeType::kMurder;
  std::vector<const SentenceUnit*> sentences;

  std::string Key() const;
};

// 1 iff some token is labelled kPerpetrator.
int DeriveSentenceLabel(std::span<const TokenLabel> token_labels);

// Checks the SentenceUnit invariants across one episode; throws Error naming
// the offending seq_index.
void ValidateEpisode(std::span<const SentenceUnit> units);

// Groups sentences carrying a case id into cases, ordered by (episode, case).
// Sentences without a case id are not part of any case.
std::vector<Case> GroupCases(std::span<const SentenceUnit> units);

std::string CaseKey(std::string_view episode_id, int case_id);

std::string_view ToString(SentenceKind kind);
std::string_view ToString(TokenLabel label);
std::string_view ToString(CrimeType type);
SentenceKind ParseSentenceKind(std::string_view s);
TokenLabel ParseTokenLabel(std::string_view s);
CrimeType ParseCrimeType(std::string_view s);

}  // namespace whodunit::corpus

#endif  // WHODUNIT_CORPUS_SENTENCE_H_
