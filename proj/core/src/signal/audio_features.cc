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

#include "whodunit/signal/audio_features.h"

#include <algorithm>
#include <cmath>

#include "whodunit/error.h"

namespace whodunit::signal {

int64_t CenterTimeMs(int64_t start_ms, int64_t end_ms) {
  const int64_t sum = start_ms + end_ms;
  return sum >= 0 ? sum / 2 : -((-sum + 1) / 2);
}

std::array<int, kAudioSamplesPerSentence> SentenceFrameIndices(const MfccComputer& mfcc,
                                                               int num_frames, int64_t start_ms,
                                                               int64_t end_ms) {
  std::array<int, kAudioSamplesPerSentence> indices{};
  const double hop_ms = 1000.0 * mfcc.hop_length() / mfcc.config().sample_rate;
  const double first_center = mfcc.FrameCenterMs(0);
  for (int k = 1; k <= kAudioSamplesPerSentence; ++k) {
    const double target = static_cast<double>(start_ms) +
                          static_cast<double>(end_ms - start_ms) * k / (kAudioSamplesPerSentence + 1);
    const double pos = (target - first_center) / hop_ms;
    int lo = static_cast<int>(std::floor(pos));
    // Nearest centre; on an exact tie keep the earlier frame.
    int best = (pos - lo) > 0.5 ? lo + 1 : lo;
    indices[k - 1] = std::clamp(best, 0, num_frames - 1);
  }
  return indices;
}

std::vector<double> SentenceAudioFeature(const MfccComputer& mfcc, const AudioTrack& track,
                                         int64_t start_ms, int64_t end_ms) {
  if (end_ms < start_ms) throw Error("audio interval ends before it starts");
  if (start_ms < 0 || static_cast<double>(end_ms) > track.DurationMs()) {
    throw Error("audio interval [" + std::to_string(start_ms) + ", " + std::to_string(end_ms) +
                "] ms lies outside the track");
  }
  if (track.sample_rate != mfcc.config().sample_rate) {
    throw Error("audio track has not been resampled to the MFCC rate");
  }
  const int num_frames = mfcc.NumFrames(track.samples.size());
  if (num_frames == 0) throw Error("audio track shorter than one MFCC frame");
  const auto indices = SentenceFrameIndices(mfcc, num_frames, start_ms, end_ms);
  std::vector<double> feature;
  feature.reserve(static_cast<size_t>(kAudioSamplesPerSentence) * mfcc.num_coefficients());
  int cached_index = -1;
  std::vector<double> cached;
  for (int index : indices) {
    if (index != cached_index) {
      cached = mfcc.Frame(track.samples, index);
      cached_index = index;
    }
    feature.insert(feature.end(), cached.begin(), cached.end());
  }
  return feature;
}

}  // namespace whodunit::signal
