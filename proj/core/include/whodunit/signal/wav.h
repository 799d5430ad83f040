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

#ifndef WHODUNIT_SIGNAL_WAV_H_
#define WHODUNIT_SIGNAL_WAV_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace whodunit::signal {

inline constexpr int kTargetSampleRate = 16000;

// Mono PCM in [-1, 1].
struct AudioTrack {
  std::vector<float> samples;
  int sample_rate = kTargetSampleRate;

  double DurationMs() const {
    return 1000.0 * static_cast<double>(samples.size()) / sample_rate;
  }
};

// Reads 16-bit PCM WAV; multi-channel input is averaged to mono.
AudioTrack ReadWav(std::istream& in);
AudioTrack ReadWavFile(const std::filesystem::path& path);
// Writes 16-bit mono PCM, clipping to [-1, 1].
void WriteWav(std::ostream& out, const AudioTrack& track);
void WriteWavFile(const std::filesystem::path& path, const AudioTrack& track);

// Linear-interpolation resampling; a no-op when the rate already matches.
AudioTrack Resample(const AudioTrack& track, int target_rate = kTargetSampleRate);

}  // namespace whodunit::signal

#endif  // WHODUNIT_SIGNAL_WAV_H_
