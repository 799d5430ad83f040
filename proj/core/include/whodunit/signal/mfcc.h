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

#ifndef WHODUNIT_SIGNAL_MFCC_H_
#define WHODUNIT_SIGNAL_MFCC_H_

#include <array>
#include <span>
#include <vector>

#include "whodunit/signal/fft.h"
#include "whodunit/signal/wav.h"

namespace whodunit::signal {

struct MfccConfig {
  int sample_rate = kTargetSampleRate;
  double window_ms = 25.0;
  double hop_ms = 5.0;
  int fft_size = 512;
  int num_filters = 26;
  int num_coefficients = 13;
  double preemphasis = 0.97;
  double log_floor = 1e-10;
  double low_hz = 0.0;
  double high_hz = 0.0;  // 0 means Nyquist
};

double HzToMel(double hz);
double MelToHz(double mel);

// Frame-wise MFCC extractor. Each frame is processed independently:
// pre-emphasis within the frame (first sample scaled by 1 - coefficient),
// Hamming window, zero-padded power spectrum, triangular mel filterbank
// evaluated at the exact bin frequencies, floored natural log, orthonormal
// DCT-II. Because frames never look outside their own samples, shifting the
// signal by one hop shifts the frame sequence by one.
class MfccComputer {
 public:
  explicit MfccComputer(const MfccConfig& config = {});

  const MfccConfig& config() const { return config_; }
  int frame_length() const { return frame_length_; }
  int hop_length() const { return hop_length_; }
  int num_coefficients() const { return config_.num_coefficients; }

  // floor((n - frame_length) / hop) + 1, or 0 when n < frame_length.
  int NumFrames(size_t num_samples) const;
  // Centre of frame `index` in milliseconds.
  double FrameCenterMs(int index) const;
  // Filter centre frequencies in Hz, one per mel filter.
  const std::vector<double>& FilterCentersHz() const { return centers_hz_; }
  // Weight of filter `m` at FFT bin `k`.
  double FilterWeight(int m, int k) const { return filters_[m * num_bins_ + k]; }

  std::vector<double> FilterbankEnergies(std::span<const float> samples, int frame_index) const;
  std::vector<double> Frame(std::span<const float> samples, int frame_index) const;

  // Every frame of the track; throws Error when it is shorter than one frame
  // or its sample rate differs from the configured one.
  std::vector<std::vector<double>> Frames(const AudioTrack& track) const;

 private:
  MfccConfig config_;
  int frame_length_;
  int hop_length_;
  int num_bins_;
  Fft fft_;
  std::vector<double> window_;
  std::vector<double> filters_;  // num_filters x num_bins, row-major
  std::vector<double> centers_hz_;
  std::vector<double> dct_;  // num_coefficients x num_filters, row-major
};

}  // namespace whodunit::signal

#endif  // WHODUNIT_SIGNAL_MFCC_H_
