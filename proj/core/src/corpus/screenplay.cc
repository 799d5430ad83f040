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

#include "whodunit/corpus/screenplay.h"

#include <cctype>
#include <optional>

#include "whodunit/corpus/tokenize.h"
#include "whodunit/error.h"

namespace whodunit::corpus {
namespace {

// Returns the speaker name when `line` is an upper-case `NAME:` cue.
std::optional<std::string_view> MatchCue(std::string_view line, std::string_view* dialog) {
  const size_t colon = line.find(':');
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  std::string_view name = Trim(line.substr(0, colon));
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return std::nullopt;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    if (std::islower(u)) return std::nullopt;
    if (!(std::isupper(u) || std::isdigit(u) || c == ' ' || c == '.' || c == '\'' || c == '-')) {
      return std::nullopt;
    }
  }
  *dialog = Trim(line.substr(colon + 1));
  return name;
}

class ScreenplayParser {
 public:
  explicit ScreenplayParser(std::string_view episode_id) : episode_id_(episode_id) {}

  std::vector<SentenceUnit> Run(std::string_view text) {
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
      size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      HandleLine(Trim(text.substr(pos, end - pos)), line_no);
      if (end == text.size()) break;
      pos = end + 1;
    }
    if (description_) {
      throw ParseError("unterminated scene description", description_start_);
    }
    CheckPendingCue();
    return std::move(units_);
  }

 private:
  void HandleLine(std::string_view line, int line_no) {
    if (description_) {
      ContinueDescription(line, line_no);
      return;
    }
    if (line.empty()) return;
    if (line.starts_with("##")) {
      CheckPendingCue();
      speaker_.reset();
      return;
    }
    if (line.front() == '(') {
      CheckPendingCue();
      description_ = std::string();
      description_start_ = line_no;
      ContinueDescription(line.substr(1), line_no);
      return;
    }
    std::string_view dialog;
    if (auto name = MatchCue(line, &dialog)) {
      CheckPendingCue();
      speaker_ = std::string(*name);
      if (dialog.empty()) {
        pending_cue_line_ = line_no;
      } else {
        Emit(dialog, SentenceKind::kUtterance, line_no);
      }
      return;
    }
    if (!speaker_) throw ParseError("dialog line without a speaker cue", line_no);
    pending_cue_line_ = 0;
    Emit(line, SentenceKind::kUtterance, line_no);
  }

  void ContinueDescription(std::string_view line, int line_no) {
    const size_t close = line.rfind(')');
    if (close == std::string_view::npos) {
      if (!line.empty()) {
        if (!description_->empty()) description_->push_back(' ');
        description_->append(line);
      }
      return;
    }
    if (!Trim(line.substr(close + 1)).empty()) {
      throw ParseError("text after closing parenthesis", line_no);
    }
    std::string_view inner = Trim(line.substr(0, close));
    if (!inner.empty()) {
      if (!description_->empty()) description_->push_back(' ');
      description_->append(inner);
    }
    std::string body = std::move(*description_);
    description_.reset();
    Emit(body, SentenceKind::kSceneDescription, description_start_);
  }

  void CheckPendingCue() {
    if (pending_cue_line_ > 0) {
      throw ParseError("speaker cue without following dialog", pending_cue_line_);
    }
  }

  void Emit(std::string_view text, SentenceKind kind, int line_no) {
    size_t emitted = 0;
    for (const std::string& sentence : SplitSentences(text)) {
      std::vector<std::string> tokens = Tokenize(sentence);
      if (tokens.empty()) continue;
      SentenceUnit unit;
      unit.episode_id = episode_id_;
      unit.seq_index = static_cast<int>(units_.size());
      unit.kind = kind;
      if (kind == SentenceKind::kUtterance) unit.speaker = speaker_;
      unit.token_labels.assign(tokens.size(), TokenLabel::kNone);
      unit.tokens = std::move(tokens);
      units_.push_back(std::move(unit));
      ++emitted;
    }
    if (emitted == 0) throw ParseError("content line has no tokens", line_no);
  }

  std::string episode_id_;
  std::vector<SentenceUnit> units_;
  std::optional<std::string> speaker_;
  std::optional<std::string> description_;
  int description_start_ = 0;
  int pending_cue_line_ = 0;
};

}  // namespace

std::vector<SentenceUnit> ParseScreenplay(std::string_view text, std::string_view episode_id) {
  return ScreenplayParser(episode_id).Run(text);
}

}  // namespace whodunit::corpus
