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

#ifndef WHODUNIT_SIGNAL_FFT_H_
#define WHODUNIT_SIGNAL_FFT_H_

#include <complex>
#include <span>
#include <vector>

namespace whodunit::signal {

// In-place iterative radix-2 FFT. The size must be a power of two.
class Fft {
 public:
  explicit Fft(int size);

  int size() const { return size_; }
  void Forward(std::span<std::complex<double>> data) const;

  // |X_k|^2 for k = 0..size/2 of a real input zero-padded to `size`.
  void PowerSpectrum(std::span<const double> input, std::vector<double>* power) const;

 private:
  int size_;
  std::vector<int> bit_reverse_;
  std::vector<std::complex<double>> twiddle_;
};

}  // namespace whodunit::signal

#endif  // WHODUNIT_SIGNAL_FFT_H_
