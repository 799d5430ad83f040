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

#ifndef WHODUNIT_SIGNAL_FEATURE_CACHE_H_
#define WHODUNIT_SIGNAL_FEATURE_CACHE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "whodunit/corpus/sentence.h"
#include "whodunit/signal/mfcc.h"
#include "whodunit/signal/visual_store.h"
#include "whodunit/signal/vocab.h"

namespace whodunit::signal {

inline constexpr int kDefaultMaxTokens = 60;
inline constexpr int kAcousticDim = 65;

// Per-sentence model input.
struct FeatureBundle {
  std::vector<int32_t> token_ids;  // padded to max_tokens with Vocab::kPadId
  std::vector<uint8_t> mask;       // 1 at real token positions
  Eigen::VectorXd x_v;
  Eigen::VectorXd x_a;
  int gold_label = 0;
};

struct FeatureRecord {
  std::string episode_id;
  int case_id = -1;  // -1: sentence not assigned to a case
  int seq_index = 0;
  FeatureBundle bundle;
};

// Token ids and mask for one sentence; tokens beyond max_tokens are dropped.
void EncodeTokens(const Vocab& vocab, std::span<const std::string> tokens, int max_tokens,
                  FeatureBundle* bundle);

// Builds every record of one timed episode. The track must already be at the
// MFCC sample rate; the visual vector is sampled at the centre of each span.
std::vector<FeatureRecord> FeaturizeEpisode(std::span<const corpus::SentenceUnit> units,
                                            const Vocab& vocab, const AudioTrack& track,
                                            const VisualStore& visual, const MfccComputer& mfcc,
                                            int max_tokens = kDefaultMaxTokens);

// Binary per-episode container, little-endian:
//   "WDF1" u32 version u32 id_len id_bytes u32 n_records u32 max_tokens
//   u32 visual_dim u32 acoustic_dim, then per record
//   i32 case_id i32 seq_index u8 gold i32 ids[max_tokens] u8 mask[max_tokens]
//   f32 x_v[visual_dim] f32 x_a[acoustic_dim].
// Vectors are stored as 32-bit floats.
void WriteFeatureCache(std::ostream& out, std::span<const FeatureRecord> records);
std::vector<FeatureRecord> ReadFeatureCache(std::istream& in);
void WriteFeatureCacheFile(const std::filesystem::path& path, std::span<const FeatureRecord> records);
std::vector<FeatureRecord> ReadFeatureCacheFile(const std::filesystem::path& path);

// Rounds x_v and x_a through 32-bit floats, matching a cache round trip.
void QuantizeToCachePrecision(std::span<FeatureRecord> records);

}  // namespace whodunit::signal

#endif  // WHODUNIT_SIGNAL_FEATURE_CACHE_H_
