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

#include "whodunit/corpus/stats.h"

#include <algorithm>
#include <ostream>
#include <set>

#include "whodunit/error.h"

namespace whodunit::corpus {

const StatsRow& StatsTable::Row(const std::string& name) const {
  for (const StatsRow& r : per_case) {
    if (r.name == name) return r;
  }
  throw Error("no statistics row '" + name + "'");
}

StatsTable CorpusStats(std::span<const Case> cases) {
  if (cases.empty()) throw Error("corpus statistics need at least one case");
  const char* names[] = {"sentences", "sentences_with_perpetrator", "scene_descriptions",
                         "spoken_utterances", "characters"};
  std::vector<std::vector<double>> values(std::size(names));
  std::map<std::string, std::set<int>> cases_per_episode;
  StatsTable table;
  for (const Case& c : cases) {
    double perp = 0, scenes = 0, spoken = 0;
    std::set<std::string> speakers;
    for (const SentenceUnit* u : c.sentences) {
      perp += u->gold_label;
      if (u->kind == SentenceKind::kSceneDescription) {
        ++scenes;
      } else {
        ++spoken;
        speakers.insert(*u->speaker);
      }
    }
    values[0].push_back(static_cast<double>(c.sentences.size()));
    values[1].push_back(perp);
    values[2].push_back(scenes);
    values[3].push_back(spoken);
    values[4].push_back(static_cast<double>(speakers.size()));
    cases_per_episode[c.episode_id].insert(c.case_id);
    ++table.crime_counts[c.crime_type];
  }
  for (size_t r = 0; r < values.size(); ++r) {
    const auto& v = values[r];
    StatsRow row{names[r], *std::ranges::min_element(v), *std::ranges::max_element(v), 0.0};
    for (double x : v) row.avg += x;
    row.avg /= static_cast<double>(v.size());
    table.per_case.push_back(row);
  }
  for (const auto& [episode, ids] : cases_per_episode) {
    if (ids.size() == 1) {
      ++table.episodes_with_one_case;
    } else if (ids.size() == 2) {
      ++table.episodes_with_two_cases;
    } else {
      ++table.episodes_with_more_cases;
    }
  }
  table.total_cases = static_cast<int>(cases.size());
  return table;
}

void WriteStatsCsv(std::ostream& out, const StatsTable& table) {
  out << "statistic,min,max,avg\n";
  out << "episodes_with_one_case," << table.episodes_with_one_case << ",,\n";
  out << "episodes_with_two_cases," << table.episodes_with_two_cases << ",,\n";
  out << "total_cases," << table.total_cases << ",,\n";
  for (const StatsRow& r : table.per_case) {
    out << r.name << ',' << r.min << ',' << r.max << ',' << r.avg << '\n';
  }
  for (const auto& [type, count] : table.crime_counts) {
    out << "crime_" << ToString(type) << ',' << count << ",,\n";
  }
}

}  // namespace whodunit::corpus
