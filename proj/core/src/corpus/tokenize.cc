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

#include "whodunit/corpus/tokenize.h"

#include <cctype>

namespace whodunit::corpus {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool IsPunct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    size_t j = i;
    while (j < text.size() && !IsSpace(text[j])) ++j;
    std::string_view word = text.substr(i, j - i);
    while (!word.empty() && IsPunct(word.front())) word.remove_prefix(1);
    while (!word.empty() && IsPunct(word.back())) word.remove_suffix(1);
    if (!word.empty()) {
      std::string token(word);
      for (char& c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      tokens.push_back(std::move(token));
    }
    i = j;
  }
  return tokens;
}

std::vector<std::string> SplitSentences(std::string_view line) {
  std::vector<std::string> sentences;
  size_t begin = 0;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    const bool terminator = c == '.' || c == '?' || c == '!';
    if (terminator && i + 1 < line.size() && IsSpace(line[i + 1])) {
      std::string_view piece = Trim(line.substr(begin, i + 1 - begin));
      if (!piece.empty()) sentences.emplace_back(piece);
      begin = i + 1;
    }
  }
  std::string_view tail = Trim(line.substr(begin));
  if (!tail.empty()) sentences.emplace_back(tail);
  return sentences;
}

}  // namespace whodunit::corpus
