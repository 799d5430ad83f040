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

#ifndef WHODUNIT_SIGNAL_VOCAB_H_
#define WHODUNIT_SIGNAL_VOCAB_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "whodunit/corpus/sentence.h"

namespace whodunit::signal {

inline constexpr int kEmbeddingDim = 50;

class Vocab {
 public:
  static constexpr int kPadId = 0;
  static constexpr int kUnkId = 1;
  static constexpr std::string_view kPadToken = "<pad>";
  static constexpr std::string_view kUnkToken = "<unk>";

  Vocab();

  // Id of `token`, or kUnkId when it is not in the vocabulary.
  int Id(std::string_view token) const;
  const std::string& Token(int id) const { return tokens_.at(id); }
  int size() const { return static_cast<int>(tokens_.size()); }
  // Appends a token and returns its id; an existing token keeps its id.
  int Add(std::string_view token);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

// A vocabulary with its initial embedding table (one row per id).
struct EmbeddedVocab {
  Vocab vocab;
  Eigen::MatrixXd table;
};

// Corpus tokens found in the embedding file (rows `token v1 .. v<dim>`) get
// ids 2.. in lexicographic order and their file vectors. Row 0 (padding) is
// zero; row 1 (shared by every out-of-file token) is a seeded zero-mean
// random vector. Throws ParseError on rows with the wrong dimensionality.
EmbeddedVocab BuildVocab(std::span<const corpus::SentenceUnit> corpus, std::istream& embeddings,
                         int dim = kEmbeddingDim, uint64_t seed = 0);
EmbeddedVocab BuildVocabFromFile(std::span<const corpus::SentenceUnit> corpus,
                                 const std::filesystem::path& embeddings, int dim = kEmbeddingDim,
                                 uint64_t seed = 0);

// Persists the full table (including <pad> and <unk>) in the embedding file
// format with round-trip precision, rows in id order.
void WriteEmbeddingTable(std::ostream& out, const EmbeddedVocab& vocab);
EmbeddedVocab ReadEmbeddingTable(std::istream& in);
EmbeddedVocab ReadEmbeddingTableFile(const std::filesystem::path& path);

}  // namespace whodunit::signal

#endif  // WHODUNIT_SIGNAL_VOCAB_H_
