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

#include "whodunit/signal/mfcc.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "whodunit/error.h"

namespace whodunit::signal {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MfccComputer::MfccComputer(const MfccConfig& config)
    : config_(config),
      frame_length_(static_cast<int>(std::lround(config.window_ms * config.sample_rate / 1000.0))),
      hop_length_(static_cast<int>(std::lround(config.hop_ms * config.sample_rate / 1000.0))),
      num_bins_(config.fft_size / 2 + 1),
      fft_(config.fft_size) {
  if (frame_length_ <= 1 || hop_length_ <= 0) throw Error("bad MFCC window or hop");
  if (frame_length_ > config.fft_size) throw Error("MFCC window longer than FFT size");
  if (config.num_filters <= 0 || config.num_coefficients <= 0 ||
      config.num_coefficients > config.num_filters) {
    throw Error("bad MFCC filter or coefficient count");
  }
  window_.resize(frame_length_);
  for (int n = 0; n < frame_length_; ++n) {
    window_[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / (frame_length_ - 1));
  }

  const int m_count = config.num_filters;
  const double high = config.high_hz > 0 ? config.high_hz : config.sample_rate / 2.0;
  const double mel_low = HzToMel(config.low_hz);
  const double mel_high = HzToMel(high);
  std::vector<double> edges(m_count + 2);
  for (int i = 0; i < m_count + 2; ++i) {
    edges[i] = MelToHz(mel_low + (mel_high - mel_low) * i / (m_count + 1));
  }
  filters_.assign(static_cast<size_t>(m_count) * num_bins_, 0.0);
  centers_hz_.resize(m_count);
  for (int m = 0; m < m_count; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    centers_hz_[m] = center;
    for (int k = 0; k < num_bins_; ++k) {
      const double f = static_cast<double>(k) * config.sample_rate / config.fft_size;
      double w = 0.0;
      if (f >= left && f <= center) {
        w = (f - left) / (center - left);
      } else if (f > center && f <= right) {
        w = (right - f) / (right - center);
      }
      filters_[m * num_bins_ + k] = w;
    }
  }

  dct_.resize(static_cast<size_t>(config.num_coefficients) * m_count);
  for (int i = 0; i < config.num_coefficients; ++i) {
    const double scale = std::sqrt((i == 0 ? 1.0 : 2.0) / m_count);
    for (int m = 0; m < m_count; ++m) {
      dct_[i * m_count + m] = scale * std::cos(std::numbers::pi * i * (m + 0.5) / m_count);
    }
  }
}

int MfccComputer::NumFrames(size_t num_samples) const {
  if (num_samples < static_cast<size_t>(frame_length_)) return 0;
  return static_cast<int>((num_samples - frame_length_) / hop_length_) + 1;
}

double MfccComputer::FrameCenterMs(int index) const {
  return (static_cast<double>(index) * hop_length_ + frame_length_ / 2.0) * 1000.0 /
         config_.sample_rate;
}

std::vector<double> MfccComputer::FilterbankEnergies(std::span<const float> samples,
                                                     int frame_index) const {
  const size_t begin = static_cast<size_t>(frame_index) * hop_length_;
  if (frame_index < 0 || begin + frame_length_ > samples.size()) {
    throw Error("MFCC frame index out of range");
  }
  std::vector<double> frame(frame_length_);
  for (int n = 0; n < frame_length_; ++n) frame[n] = samples[begin + n];
  for (int n = frame_length_ - 1; n > 0; --n) frame[n] -= config_.preemphasis * frame[n - 1];
  frame[0] -= config_.preemphasis * frame[0];
  for (int n = 0; n < frame_length_; ++n) frame[n] *= window_[n];

  std::vector<double> power;
  fft_.PowerSpectrum(frame, &power);
  std::vector<double> energies(config_.num_filters, 0.0);
  for (int m = 0; m < config_.num_filters; ++m) {
    const double* w = &filters_[m * num_bins_];
    double e = 0.0;
    for (int k = 0; k < num_bins_; ++k) e += w[k] * power[k];
    energies[m] = e;
  }
  return energies;
}

std::vector<double> MfccComputer::Frame(std::span<const float> samples, int frame_index) const {
  std::vector<double> log_energy = FilterbankEnergies(samples, frame_index);
  for (double& e : log_energy) e = std::log(std::max(e, config_.log_floor));
  const int m_count = config_.num_filters;
  std::vector<double> coeffs(config_.num_coefficients, 0.0);
  for (int i = 0; i < config_.num_coefficients; ++i) {
    double c = 0.0;
    for (int m = 0; m < m_count; ++m) c += dct_[i * m_count + m] * log_energy[m];
    coeffs[i] = c;
  }
  return coeffs;
}

std::vector<std::vector<double>> MfccComputer::Frames(const AudioTrack& track) const {
  if (track.sample_rate != config_.sample_rate) {
    throw Error("audio sample rate " + std::to_string(track.sample_rate) + " differs from MFCC rate " +
                std::to_string(config_.sample_rate));
  }
  const int n = NumFrames(track.samples.size());
  if (n == 0) throw Error("audio track shorter than one MFCC frame");
  std::vector<std::vector<double>> frames;
  frames.reserve(n);
  for (int i = 0; i < n; ++i) frames.push_back(Frame(track.samples, i));
  return frames;
}

}  // namespace whodunit::signal
