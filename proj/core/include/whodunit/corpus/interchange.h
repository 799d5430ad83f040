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

#ifndef WHODUNIT_CORPUS_INTERCHANGE_H_
#define WHODUNIT_CORPUS_INTERCHANGE_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "whodunit/corpus/sentence.h"

namespace whodunit::corpus {

// JSON-lines interchange: one object per SentenceUnit with exactly the keys
// episode_id, case_id, seq_index, kind, speaker, tokens, token_labels,
// gold_label, start_ms, end_ms. Optional values are written as null.
std::string ToJsonLine(const SentenceUnit& unit);
SentenceUnit FromJsonLine(std::string_view line, int line_no = 0);

void WriteInterchange(std::ostream& out, std::span<const SentenceUnit> units);
// Reads every unit and validates each episode it contains.
std::vector<SentenceUnit> ReadInterchange(std::istream& in);

void WriteInterchangeFile(const std::filesystem::path& path, std::span<const SentenceUnit> units);
std::vector<SentenceUnit> ReadInterchangeFile(const std::filesystem::path& path);
// Reads a single .jsonl file, or every *.jsonl file of a directory in
// lexicographic order.
std::vector<SentenceUnit> ReadInterchangePath(const std::filesystem::path& path);

// Splits a unit list into per-episode runs, preserving order.
std::vector<std::vector<SentenceUnit>> SplitEpisodes(std::span<const SentenceUnit> units);

// Case metadata lines: {"episode_id": ..., "case_id": ..., "crime_type": ...}.
// Keyed by CaseKey().
using CrimeTypeMap = std::map<std::string, CrimeType>;
void WriteCaseMeta(std::ostream& out, const CrimeTypeMap& meta);
CrimeTypeMap ReadCaseMeta(std::istream& in);

}  // namespace whodunit::corpus

#endif  // WHODUNIT_CORPUS_INTERCHANGE_H_
