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

#include "whodunit/corpus/interchange.h"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "json.hpp"
#include "whodunit/error.h"

namespace whodunit::corpus {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 10> kUnitKeys = {
    "episode_id", "case_id", "seq_index", "kind",     "speaker",
    "tokens",     "token_labels", "gold_label", "start_ms", "end_ms"};

template <typename T>
Json OptionalToJson(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

std::string ToJsonLine(const SentenceUnit& unit) {
  Json j;
  j["episode_id"] = unit.episode_id;
  j["case_id"] = OptionalToJson(unit.case_id);
  j["seq_index"] = unit.seq_index;
  j["kind"] = std::string(ToString(unit.kind));
  j["speaker"] = OptionalToJson(unit.speaker);
  j["tokens"] = unit.tokens;
  Json labels = Json::array();
  for (TokenLabel l : unit.token_labels) labels.push_back(std::string(ToString(l)));
  j["token_labels"] = std::move(labels);
  j["gold_label"] = unit.gold_label;
  j["start_ms"] = OptionalToJson(unit.start_ms);
  j["end_ms"] = OptionalToJson(unit.end_ms);
  return j.dump();
}

SentenceUnit FromJsonLine(std::string_view line, int line_no) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
  }
  if (!j.is_object()) throw ParseError("expected a JSON object", line_no);
  for (const auto& [key, value] : j.items()) {
    if (std::ranges::find(kUnitKeys, key) == kUnitKeys.end()) {
      throw ParseError("unknown key '" + key + "'", line_no);
    }
  }
  for (std::string_view key : kUnitKeys) {
    if (!j.contains(key)) throw ParseError("missing key '" + std::string(key) + "'", line_no);
  }
  try {
    SentenceUnit u;
    u.episode_id = j.at("episode_id").get<std::string>();
    if (!j.at("case_id").is_null()) u.case_id = j.at("case_id").get<int>();
    u.seq_index = j.at("seq_index").get<int>();
    u.kind = ParseSentenceKind(j.at("kind").get<std::string>());
    if (!j.at("speaker").is_null()) u.speaker = j.at("speaker").get<std::string>();
    u.tokens = j.at("tokens").get<std::vector<std::string>>();
    for (const auto& l : j.at("token_labels")) {
      u.token_labels.push_back(ParseTokenLabel(l.get<std::string>()));
    }
    u.gold_label = j.at("gold_label").get<int>();
    if (u.gold_label != 0 && u.gold_label != 1) throw Error("gold_label must be 0 or 1");
    if (!j.at("start_ms").is_null()) u.start_ms = j.at("start_ms").get<int64_t>();
    if (!j.at("end_ms").is_null()) u.end_ms = j.at("end_ms").get<int64_t>();
    return u;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad field type: ") + e.what(), line_no);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), line_no);
  }
}

void WriteInterchange(std::ostream& out, std::span<const SentenceUnit> units) {
  for (const SentenceUnit& u : units) out << ToJsonLine(u) << '\n';
}

std::vector<SentenceUnit> ReadInterchange(std::istream& in) {
  std::vector<SentenceUnit> units;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    units.push_back(FromJsonLine(line, line_no));
  }
  std::set<std::string> seen;
  for (const auto& episode : SplitEpisodes(units)) {
    if (!seen.insert(episode.front().episode_id).second) {
      throw Error("episode '" + episode.front().episode_id + "' is not contiguous");
    }
    ValidateEpisode(episode);
  }
  return units;
}

void WriteInterchangeFile(const std::filesystem::path& path, std::span<const SentenceUnit> units) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  WriteInterchange(out, units);
  if (!out) throw Error("write failed: " + path.string());
}

std::vector<SentenceUnit> ReadInterchangeFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return ReadInterchange(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::vector<SentenceUnit> ReadInterchangePath(const std::filesystem::path& path) {
  if (!std::filesystem::is_directory(path)) return ReadInterchangeFile(path);
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path());
    }
  }
  std::ranges::sort(files);
  std::vector<SentenceUnit> units;
  for (const auto& f : files) {
    std::vector<SentenceUnit> part = ReadInterchangeFile(f);
    units.insert(units.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
  }
  return units;
}

std::vector<std::vector<SentenceUnit>> SplitEpisodes(std::span<const SentenceUnit> units) {
  std::vector<std::vector<SentenceUnit>> episodes;
  for (const SentenceUnit& u : units) {
    if (episodes.empty() || episodes.back().front().episode_id != u.episode_id) {
      episodes.emplace_back();
    }
    episodes.back().push_back(u);
  }
  return episodes;
}

void WriteCaseMeta(std::ostream& out, const CrimeTypeMap& meta) {
  for (const auto& [key, type] : meta) {
    const size_t hash = key.rfind('#');
    Json j;
    j["episode_id"] = key.substr(0, hash);
    j["case_id"] = std::stoi(key.substr(hash + 1));
    j["crime_type"] = std::string(ToString(type));
    out << j.dump() << '\n';
  }
}

CrimeTypeMap ReadCaseMeta(std::istream& in) {
  CrimeTypeMap meta;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Json j = Json::parse(line);
      meta[CaseKey(j.at("episode_id").get<std::string>(), j.at("case_id").get<int>())] =
          ParseCrimeType(j.at("crime_type").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad case metadata: ") + e.what(), line_no);
    }
  }
  return meta;
}

}  // namespace whodunit::corpus
