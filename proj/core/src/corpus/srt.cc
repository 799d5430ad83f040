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

#include "whodunit/corpus/srt.h"

#include <charconv>
#include <string>

#include "whodunit/corpus/tokenize.h"
#include "whodunit/error.h"

namespace whodunit::corpus {
namespace {

bool ParseFixedDigits(std::string_view s, int digits, int64_t* out) {
  if (static_cast<int>(s.size()) != digits) return false;
  int64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  *out = v;
  return true;
}

// HH:MM:SS,mmm (a '.' separator is tolerated).
bool ParseTimestamp(std::string_view s, int64_t* ms) {
  s = Trim(s);
  if (s.size() != 12 || s[2] != ':' || s[5] != ':' || (s[8] != ',' && s[8] != '.')) return false;
  int64_t h, m, sec, milli;
  if (!ParseFixedDigits(s.substr(0, 2), 2, &h) || !ParseFixedDigits(s.substr(3, 2), 2, &m) ||
      !ParseFixedDigits(s.substr(6, 2), 2, &sec) || !ParseFixedDigits(s.substr(9, 3), 3, &milli)) {
    return false;
  }
  if (m >= 60 || sec >= 60) return false;
  *ms = ((h * 60 + m) * 60 + sec) * 1000 + milli;
  return true;
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

}  // namespace

std::vector<CaptionCue> ParseSrt(std::string_view text) {
  const std::vector<std::string_view> lines = SplitLines(text);
  std::vector<CaptionCue> cues;
  size_t i = 0;
  while (i < lines.size()) {
    if (Trim(lines[i]).empty()) {
      ++i;
      continue;
    }
    const int block_line = static_cast<int>(i) + 1;
    const std::string_view index_text = Trim(lines[i]);
    CaptionCue cue;
    auto [ptr, ec] = std::from_chars(index_text.data(), index_text.data() + index_text.size(),
                                     cue.index);
    if (ec != std::errc() || ptr != index_text.data() + index_text.size() || cue.index <= 0) {
      throw ParseError("malformed cue index '" + std::string(index_text) + "'", block_line);
    }
    if (!cues.empty() && cue.index <= cues.back().index) {
      throw ParseError("cue index " + std::to_string(cue.index) + " not increasing", block_line);
    }
    ++i;
    const std::string block = "cue " + std::to_string(cue.index) + ": ";
    if (i >= lines.size()) throw ParseError(block + "missing timestamp line", block_line);
    const std::string_view timing = lines[i];
    const size_t arrow = timing.find("-->");
    if (arrow == std::string_view::npos || !ParseTimestamp(timing.substr(0, arrow), &cue.start_ms) ||
        !ParseTimestamp(timing.substr(arrow + 3), &cue.end_ms)) {
      throw ParseError(block + "malformed timestamp '" + std::string(timing) + "'",
                       static_cast<int>(i) + 1);
    }
    if (cue.end_ms <= cue.start_ms) {
      throw ParseError(block + "end time not after start time", static_cast<int>(i) + 1);
    }
    if (!cues.empty() && cue.start_ms < cues.back().start_ms) {
      throw ParseError(block + "start time earlier than previous cue", static_cast<int>(i) + 1);
    }
    ++i;
    while (i < lines.size() && !Trim(lines[i]).empty()) {
      if (!cue.text.empty()) cue.text.push_back(' ');
      cue.text.append(Trim(lines[i]));
      ++i;
    }
    cues.push_back(std::move(cue));
  }
  return cues;
}

}  // namespace whodunit::corpus
