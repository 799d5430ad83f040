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

#ifndef WHODUNIT_CORPUS_TOKENIZE_H_
#define WHODUNIT_CORPUS_TOKENIZE_H_

#include <string>
#include <string_view>
#include <vector>

namespace whodunit::corpus {

// Lowercases, splits on whitespace and strips leading/trailing ASCII
// punctuation from every token. Internal punctuation ("don't", "man-handled")
// is kept. Tokens that become empty are dropped.
std::vector<std::string> Tokenize(std::string_view text);

// Splits one line into sentences at '.', '?' or '!' followed by whitespace.
// The terminator stays with its sentence; surrounding whitespace is trimmed
// and empty pieces are dropped.
std::vector<std::string> SplitSentences(std::string_view line);

std::string_view Trim(std::string_view s);

}  // namespace whodunit::corpus

#endif  // WHODUNIT_CORPUS_TOKENIZE_H_
