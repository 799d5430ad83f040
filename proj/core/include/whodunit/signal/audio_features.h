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

#ifndef WHODUNIT_SIGNAL_AUDIO_FEATURES_H_
#define WHODUNIT_SIGNAL_AUDIO_FEATURES_H_

#include <array>
#include <cstdint>
#include <vector>

#include "whodunit/signal/mfcc.h"

namespace whodunit::signal {

inline constexpr int kAudioSamplesPerSentence = 5;

// floor((start + end) / 2).
int64_t CenterTimeMs(int64_t start_ms, int64_t end_ms);

// Frame indices whose centres are nearest to start + k/6 * (end - start),
// k = 1..5; ties go to the earlier frame. Indices are clamped to the track.
std::array<int, kAudioSamplesPerSentence> SentenceFrameIndices(const MfccComputer& mfcc,
                                                               int num_frames, int64_t start_ms,
                                                               int64_t end_ms);

// The five sampled MFCC vectors concatenated chronologically
// (5 * num_coefficients values). Throws Error if end < start or the interval
// lies outside the track.
std::vector<double> SentenceAudioFeature(const MfccComputer& mfcc, const AudioTrack& track,
                                         int64_t start_ms, int64_t end_ms);

}  // namespace whodunit::signal

#endif  // WHODUNIT_SIGNAL_AUDIO_FEATURES_H_
