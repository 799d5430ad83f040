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

#include "whodunit/corpus/sentence.h"

#include <algorithm>
#include <map>
#include <utility>

#include "whodunit/error.h"

namespace whodunit::corpus {

std::string CaseKey(std::string_view episode_id, int case_id) {
  return std::string(episode_id) + "#" + std::to_string(case_id);
}

std::string Case::Key() const { return CaseKey(episode_id, case_id); }

int DeriveSentenceLabel(std::span<const TokenLabel> token_labels) {
  return std::ranges::any_of(token_labels,
                             [](TokenLabel l) { return l == TokenLabel::kPerpetrator; })
             ? 1
             : 0;
}

void ValidateEpisode(std::span<const SentenceUnit> units) {
  for (size_t i = 0; i < units.size(); ++i) {
    const SentenceUnit& u = units[i];
    auto fail = [&](const std::string& what) {
      throw Error("episode '" + u.episode_id + "' sentence " + std::to_string(u.seq_index) +
                  ": " + what);
    };
    if (u.episode_id != units.front().episode_id) fail("episode id differs within one episode");
    if (i > 0 && u.seq_index <= units[i - 1].seq_index) fail("seq_index not strictly increasing");
    if (u.seq_index < 0) fail("negative seq_index");
    if (u.token_labels.size() != u.tokens.size()) fail("token_labels length differs from tokens");
    if (u.gold_label != DeriveSentenceLabel(u.token_labels)) {
      fail("gold_label disagrees with token labels");
    }
    const bool utterance = u.kind == SentenceKind::kUtterance;
    if (utterance != u.speaker.has_value()) fail("speaker must be present iff kind is utterance");
    if (u.start_ms.has_value() != u.end_ms.has_value()) fail("start_ms and end_ms set separately");
    if (u.start_ms && *u.end_ms < *u.start_ms) fail("end_ms before start_ms");
    if (u.case_id && *u.case_id < 0) fail("negative case_id");
  }
}

std::vector<Case> GroupCases(std::span<const SentenceUnit> units) {
  std::map<std::pair<std::string, int>, Case> by_key;
  for (const SentenceUnit& u : units) {
    if (!u.case_id) continue;
    Case& c = by_key[{u.episode_id, *u.case_id}];
    c.episode_id = u.episode_id;
    c.case_id = *u.case_id;
    c.sentences.push_back(&u);
  }
  std::vector<Case> cases;
  cases.reserve(by_key.size());
  for (auto& [key, c] : by_key) cases.push_back(std::move(c));
  return cases;
}

std::string_view ToString(SentenceKind kind) {
  return kind == SentenceKind::kUtterance ? "utterance" : "scene_description";
}

std::string_view ToString(TokenLabel label) {
  switch (label) {
    case TokenLabel::kNone: return "none";
    case TokenLabel::kPerpetrator: return "perpetrator";
    case TokenLabel::kSuspect: return "suspect";
    case TokenLabel::kOther: return "other";
  }
  return "none";
}

std::string_view ToString(CrimeType type) {
  switch (type) {
    case CrimeType::kMurder: return "murder";
    case CrimeType::kAccident: return "accident";
    case CrimeType::kSuicide: return "suicide";
    case CrimeType::kOther: return "other";
  }
  return "other";
}

SentenceKind ParseSentenceKind(std::string_view s) {
  if (s == "utterance") return SentenceKind::kUtterance;
  if (s == "scene_description") return SentenceKind::kSceneDescription;
  throw Error("unknown sentence kind '" + std::string(s) + "'");
}

TokenLabel ParseTokenLabel(std::string_view s) {
  if (s == "none") return TokenLabel::kNone;
  if (s == "perpetrator") return TokenLabel::kPerpetrator;
  if (s == "suspect") return TokenLabel::kSuspect;
  if (s == "other") return TokenLabel::kOther;
  throw Error("unknown token label '" + std::string(s) + "'");
}

CrimeType ParseCrimeType(std::string_view s) {
  if (s == "murder") return CrimeType::kMurder;
  if (s == "accident") return CrimeType::kAccident;
  if (s == "suicide") return CrimeType::kSuicide;
  if (s == "other") return CrimeType::kOther;
  throw Error("unknown crime type '" + std::string(s) + "'");
}

}  // namespace whodunit::corpus
