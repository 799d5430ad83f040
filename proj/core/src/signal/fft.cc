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

#include "whodunit/signal/fft.h"

#include <cmath>
#include <numbers>

#include "whodunit/error.h"

namespace whodunit::signal {

Fft::Fft(int size) : size_(size) {
  if (size < 2 || (size & (size - 1)) != 0) throw Error("FFT size must be a power of two");
  int bits = 0;
  while ((1 << bits) < size) ++bits;
  bit_reverse_.resize(size);
  for (int i = 0; i < size; ++i) {
    int r = 0;
    for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
    bit_reverse_[i] = r;
  }
  twiddle_.resize(size / 2);
  for (int k = 0; k < size / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * k / size;
    twiddle_[k] = {std::cos(angle), std::sin(angle)};
  }
}

void Fft::Forward(std::span<std::complex<double>> data) const {
  if (static_cast<int>(data.size()) != size_) throw Error("FFT input has the wrong size");
  for (int i = 0; i < size_; ++i) {
    if (i < bit_reverse_[i]) std::swap(data[i], data[bit_reverse_[i]]);
  }
  for (int len = 2; len <= size_; len <<= 1) {
    const int half = len / 2;
    const int stride = size_ / len;
    for (int start = 0; start < size_; start += len) {
      for (int k = 0; k < half; ++k) {
        const std::complex<double> t = twiddle_[k * stride] * data[start + k + half];
        data[start + k + half] = data[start + k] - t;
        data[start + k] += t;
      }
    }
  }
}

void Fft::PowerSpectrum(std::span<const double> input, std::vector<double>* power) const {
  if (static_cast<int>(input.size()) > size_) throw Error("FFT input longer than FFT size");
  std::vector<std::complex<double>> buf(size_);
  for (size_t i = 0; i < input.size(); ++i) buf[i] = input[i];
  Forward(buf);
  power->resize(size_ / 2 + 1);
  for (int k = 0; k <= size_ / 2; ++k) (*power)[k] = std::norm(buf[k]);
}

}  // namespace whodunit::signal
