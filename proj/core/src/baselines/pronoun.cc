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

#include "whodunit/baselines/pronoun.h"

#include <cctype>
#include <fstream>
#include <istream>

#include "whodunit/corpus/tokenize.h"
#include "whodunit/error.h"

namespace whodunit::baselines {
namespace {

std::vector<std::string> DefaultWords() {
  return {"i",      "me",       "my",     "mine",    "myself",    "we",         "us",
          "our",    "ours",     "ourselves", "you",  "your",      "yours",      "yourself",
          "yourselves", "he",   "him",    "his",     "himself",   "she",        "her",
          "hers",   "herself",  "it",     "its",     "itself",    "they",       "them",
          "their",  "theirs",   "themselves"};
}

}  // namespace

PronounLexicon::PronounLexicon() : PronounLexicon(DefaultWords()) {}

PronounLexicon::PronounLexicon(std::vector<std::string> words) {
  for (auto& w : words) {
    if (w.empty()) throw ConfigError("empty pronoun entry");
    for (unsigned char c : w) {
      if (std::isupper(c)) throw ConfigError("pronoun '" + w + "' is not lowercase");
    }
    if (!words_.insert(w).second) throw ConfigError("duplicate pronoun '" + w + "'");
  }
  if (words_.size() != kPronounCount) {
    throw ConfigError("pronoun lexicon needs " + std::to_string(kPronounCount) + " entries, got " +
                      std::to_string(words_.size()));
  }
}

PronounLexicon PronounLexicon::Read(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string w(corpus::Trim(line));
    if (!w.empty()) words.push_back(w);
  }
  return PronounLexicon(std::move(words));
}

PronounLexicon PronounLexicon::ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pronoun lexicon " + path.string());
  return Read(in);
}

int ProLabel(std::span<const std::string> tokens, const PronounLexicon& lexicon) {
  for (const auto& t : tokens) {
    if (lexicon.Contains(t)) return 1;
  }
  return 0;
}

}  // namespace whodunit::baselines
