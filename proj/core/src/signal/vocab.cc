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

#include "whodunit/signal/vocab.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "whodunit/error.h"
#include "whodunit/random.h"

namespace whodunit::signal {
namespace {

// Splits a row into its token and numeric fields.
bool ParseRow(std::string_view line, std::string_view* token, std::vector<double>* values) {
  values->clear();
  size_t i = 0;
  auto skip_space = [&] {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
  };
  skip_space();
  const size_t start = i;
  while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
  *token = line.substr(start, i - start);
  if (token->empty()) return false;
  while (true) {
    skip_space();
    if (i >= line.size()) break;
    double v;
    auto [p, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
    if (ec != std::errc()) return false;
    values->push_back(v);
    i = static_cast<size_t>(p - line.data());
  }
  return true;
}

}  // namespace

Vocab::Vocab() {
  Add(kPadToken);
  Add(kUnkToken);
}

int Vocab::Id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? kUnkId : it->second;
}

int Vocab::Add(std::string_view token) {
  auto [it, inserted] = ids_.emplace(std::string(token), static_cast<int>(tokens_.size()));
  if (inserted) tokens_.emplace_back(token);
  return it->second;
}

EmbeddedVocab BuildVocab(std::span<const corpus::SentenceUnit> corpus, std::istream& embeddings,
                         int dim, uint64_t seed) {
  std::set<std::string, std::less<>> wanted;
  for (const auto& u : corpus) wanted.insert(u.tokens.begin(), u.tokens.end());

  std::map<std::string, std::vector<double>, std::less<>> found;
  std::string line;
  std::string_view token;
  std::vector<double> values;
  int line_no = 0;
  while (std::getline(embeddings, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!ParseRow(line, &token, &values)) throw ParseError("malformed embedding row", line_no);
    if (static_cast<int>(values.size()) != dim) {
      throw ParseError("embedding row has " + std::to_string(values.size()) +
                           " values, expected " + std::to_string(dim),
                       line_no);
    }
    if (wanted.contains(token) && !found.contains(token)) found.emplace(token, values);
  }

  EmbeddedVocab out;
  for (const auto& [t, v] : found) out.vocab.Add(t);
  out.table = Eigen::MatrixXd::Zero(out.vocab.size(), dim);
  Rng rng(DeriveSeed(seed, {0x756e6b}));
  for (int d = 0; d < dim; ++d) out.table(Vocab::kUnkId, d) = rng.Uniform(-0.1, 0.1);
  for (const auto& [t, v] : found) {
    const int id = out.vocab.Id(t);
    for (int d = 0; d < dim; ++d) out.table(id, d) = v[d];
  }
  return out;
}

EmbeddedVocab BuildVocabFromFile(std::span<const corpus::SentenceUnit> corpus,
                                 const std::filesystem::path& embeddings, int dim, uint64_t seed) {
  std::ifstream in(embeddings);
  if (!in) throw Error("cannot open " + embeddings.string());
  try {
    return BuildVocab(corpus, in, dim, seed);
  } catch (const Error& e) {
    throw Error(embeddings.string() + ": " + e.what());
  }
}

void WriteEmbeddingTable(std::ostream& out, const EmbeddedVocab& vocab) {
  char buf[40];
  for (int id = 0; id < vocab.vocab.size(); ++id) {
    out << vocab.vocab.Token(id);
    for (Eigen::Index d = 0; d < vocab.table.cols(); ++d) {
      std::snprintf(buf, sizeof buf, " %.17g", vocab.table(id, d));
      out << buf;
    }
    out << '\n';
  }
}

EmbeddedVocab ReadEmbeddingTable(std::istream& in) {
  std::vector<std::string> tokens;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::string_view token;
  std::vector<double> values;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!ParseRow(line, &token, &values)) throw ParseError("malformed embedding row", line_no);
    if (!rows.empty() && values.size() != rows.front().size()) {
      throw ParseError("inconsistent embedding dimensionality", line_no);
    }
    tokens.emplace_back(token);
    rows.push_back(values);
  }
  if (tokens.size() < 2 || tokens[0] != Vocab::kPadToken || tokens[1] != Vocab::kUnkToken) {
    throw Error("embedding table must start with <pad> and <unk> rows");
  }
  EmbeddedVocab out;
  for (size_t i = 2; i < tokens.size(); ++i) {
    if (out.vocab.Add(tokens[i]) != static_cast<int>(i)) {
      throw Error("duplicate token '" + tokens[i] + "' in embedding table");
    }
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(rows.front().size());
  out.table.resize(static_cast<Eigen::Index>(rows.size()), dim);
  for (size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::Index d = 0; d < dim; ++d) out.table(static_cast<Eigen::Index>(i), d) = rows[i][d];
  }
  return out;
}

EmbeddedVocab ReadEmbeddingTableFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return ReadEmbeddingTable(in);
}

}  // namespace whodunit::signal
