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

#ifndef WHODUNIT_BASELINES_PRONOUN_H_
#define WHODUNIT_BASELINES_PRONOUN_H_

#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace whodunit::baselines {

inline constexpr size_t kPronounCount = 31;

// Personal, possessive and reflexive pronouns, lowercase.
class PronounLexicon {
 public:
  // The built-in list.
  PronounLexicon();
  // Exactly kPronounCount distinct lowercase entries, else ConfigError.
  explicit PronounLexicon(std::vector<std::string> words);

  // One token per line; blank lines and surrounding whitespace are ignored.
  static PronounLexicon Read(std::istream& in);
  static PronounLexicon ReadFile(const std::filesystem::path& path);

  bool Contains(const std::string& token) const { return words_.count(token) > 0; }
  const std::set<std::string>& words() const { return words_; }

 private:
  std::set<std::string> words_;
};

// 1 iff any token is in the lexicon.
int ProLabel(std::span<const std::string> tokens, const PronounLexicon& lexicon);

}  // namespace whodunit::baselines

#endif  // WHODUNIT_BASELINES_PRONOUN_H_
