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

#include "whodunit/signal/feature_cache.h"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

#include "binary_io.h"
#include "whodunit/error.h"
#include "whodunit/signal/audio_features.h"

namespace whodunit::signal {
namespace {

constexpr char kMagic[4] = {'W', 'D', 'F', '1'};
constexpr uint32_t kVersion = 1;

}  // namespace

void EncodeTokens(const Vocab& vocab, std::span<const std::string> tokens, int max_tokens,
                  FeatureBundle* bundle) {
  bundle->token_ids.assign(max_tokens, Vocab::kPadId);
  bundle->mask.assign(max_tokens, 0);
  const size_t n = std::min(tokens.size(), static_cast<size_t>(max_tokens));
  for (size_t i = 0; i < n; ++i) {
    bundle->token_ids[i] = vocab.Id(tokens[i]);
    bundle->mask[i] = 1;
  }
}

std::vector<FeatureRecord> FeaturizeEpisode(std::span<const corpus::SentenceUnit> units,
                                            const Vocab& vocab, const AudioTrack& track,
                                            const VisualStore& visual, const MfccComputer& mfcc,
                                            int max_tokens) {
  std::vector<FeatureRecord> records;
  records.reserve(units.size());
  for (const auto& u : units) {
    if (!u.start_ms || !u.end_ms) {
      throw Error("episode '" + u.episode_id + "' sentence " + std::to_string(u.seq_index) +
                  " has no time span; run alignment first");
    }
    FeatureRecord r;
    r.episode_id = u.episode_id;
    r.case_id = u.case_id.value_or(-1);
    r.seq_index = u.seq_index;
    EncodeTokens(vocab, u.tokens, max_tokens, &r.bundle);
    const auto xv = visual.Lookup(CenterTimeMs(*u.start_ms, *u.end_ms));
    r.bundle.x_v = Eigen::Map<const Eigen::VectorXd>(xv.data(), static_cast<Eigen::Index>(xv.size()));
    const std::vector<double> xa = SentenceAudioFeature(mfcc, track, *u.start_ms, *u.end_ms);
    r.bundle.x_a = Eigen::Map<const Eigen::VectorXd>(xa.data(), static_cast<Eigen::Index>(xa.size()));
    r.bundle.gold_label = u.gold_label;
    records.push_back(std::move(r));
  }
  return records;
}

void WriteFeatureCache(std::ostream& out, std::span<const FeatureRecord> records) {
  if (records.empty()) throw Error("feature cache needs at least one record");
  const FeatureBundle& first = records.front().bundle;
  const uint32_t max_tokens = static_cast<uint32_t>(first.token_ids.size());
  const uint32_t dv = static_cast<uint32_t>(first.x_v.size());
  const uint32_t da = static_cast<uint32_t>(first.x_a.size());
  internal::BinaryWriter w(out);
  out.write(kMagic, 4);
  w.U32(kVersion);
  w.U32(static_cast<uint32_t>(records.front().episode_id.size()));
  w.Bytes(records.front().episode_id);
  w.U32(static_cast<uint32_t>(records.size()));
  w.U32(max_tokens);
  w.U32(dv);
  w.U32(da);
  for (const FeatureRecord& r : records) {
    const FeatureBundle& b = r.bundle;
    if (r.episode_id != records.front().episode_id) throw Error("feature cache mixes episodes");
    if (b.token_ids.size() != max_tokens || b.mask.size() != max_tokens ||
        static_cast<uint32_t>(b.x_v.size()) != dv || static_cast<uint32_t>(b.x_a.size()) != da) {
      throw Error("feature bundle dimensions differ within one episode");
    }
    w.I32(r.case_id);
    w.I32(r.seq_index);
    w.U8(static_cast<uint8_t>(b.gold_label));
    for (int32_t id : b.token_ids) w.I32(id);
    for (uint8_t m : b.mask) w.U8(m);
    for (Eigen::Index i = 0; i < b.x_v.size(); ++i) w.F32(b.x_v[i]);
    for (Eigen::Index i = 0; i < b.x_a.size(); ++i) w.F32(b.x_a[i]);
  }
}

std::vector<FeatureRecord> ReadFeatureCache(std::istream& in) {
  internal::BinaryReader r(in, "feature cache");
  char magic[4];
  r.Read(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw Error("not a WDF1 feature cache");
  if (const uint32_t v = r.U32(); v != kVersion) {
    throw Error("unsupported feature cache version " + std::to_string(v));
  }
  const std::string episode_id = r.Bytes(r.U32());
  const uint32_t n = r.U32();
  const uint32_t max_tokens = r.U32();
  const uint32_t dv = r.U32();
  const uint32_t da = r.U32();
  std::vector<FeatureRecord> records(n);
  for (FeatureRecord& rec : records) {
    rec.episode_id = episode_id;
    rec.case_id = r.I32();
    rec.seq_index = r.I32();
    rec.bundle.gold_label = r.U8();
    rec.bundle.token_ids.resize(max_tokens);
    rec.bundle.mask.resize(max_tokens);
    for (auto& id : rec.bundle.token_ids) id = r.I32();
    for (auto& m : rec.bundle.mask) m = r.U8();
    rec.bundle.x_v.resize(dv);
    rec.bundle.x_a.resize(da);
    for (uint32_t i = 0; i < dv; ++i) rec.bundle.x_v[i] = r.F32();
    for (uint32_t i = 0; i < da; ++i) rec.bundle.x_a[i] = r.F32();
  }
  return records;
}

void WriteFeatureCacheFile(const std::filesystem::path& path, std::span<const FeatureRecord> records) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  WriteFeatureCache(out, records);
}

std::vector<FeatureRecord> ReadFeatureCacheFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return ReadFeatureCache(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void QuantizeToCachePrecision(std::span<FeatureRecord> records) {
  for (FeatureRecord& r : records) {
    for (Eigen::Index i = 0; i < r.bundle.x_v.size(); ++i) {
      r.bundle.x_v[i] = static_cast<float>(r.bundle.x_v[i]);
    }
    for (Eigen::Index i = 0; i < r.bundle.x_a.size(); ++i) {
      r.bundle.x_a[i] = static_cast<float>(r.bundle.x_a[i]);
    }
  }
}

}  // namespace whodunit::signal
