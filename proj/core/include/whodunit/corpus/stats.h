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

#ifndef WHODUNIT_CORPUS_STATS_H_
#define WHODUNIT_CORPUS_STATS_H_

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "whodunit/corpus/sentence.h"

namespace whodunit::corpus {

struct StatsRow {
  std::string name;
  double min = 0;
  double max = 0;
  double avg = 0;
};

// Per-case descriptive statistics in the layout of the corpus summary table.
struct StatsTable {
  int episodes_with_one_case = 0;
  int episodes_with_two_cases = 0;
  int episodes_with_more_cases = 0;
  int total_cases = 0;
  // sentences, sentences_with_perpetrator, scene_descriptions,
  // spoken_utterances, characters (distinct speaker strings).
  std::vector<StatsRow> per_case;
  std::map<CrimeType, int> crime_counts;

  const StatsRow& Row(const std::string& name) const;
};

// Throws Error on an empty case list.
StatsTable CorpusStats(std::span<const Case> cases);

void WriteStatsCsv(std::ostream& out, const StatsTable& table);

}  // namespace whodunit::corpus

#endif  // WHODUNIT_CORPUS_STATS_H_
