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

#ifndef WHODUNIT_SIGNAL_VISUAL_STORE_H_
#define WHODUNIT_SIGNAL_VISUAL_STORE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace whodunit::signal {

inline constexpr int kVisualDim = 1536;

// Precomputed per-frame image features keyed by millisecond timestamp.
// Text format: a `dim=<D>` header line, then rows `t_ms v1 .. vD`.
class VisualStore {
 public:
  explicit VisualStore(int dim = kVisualDim) : dim_(dim) {}

  int dim() const { return dim_; }
  size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  std::span<const int64_t> keys() const { return keys_; }

  // Keys must be added in strictly increasing order.
  void Add(int64_t t_ms, std::span<const double> vector);

  // Vector whose key is nearest `t_ms`; ties go to the earlier key.
  std::span<const double> Lookup(int64_t t_ms) const;

  // Throws ParseError when a row has the wrong dimension. When
  // `expected_dim` > 0 the header must match it.
  static VisualStore Read(std::istream& in, int expected_dim = kVisualDim);
  static VisualStore ReadFile(const std::filesystem::path& path, int expected_dim = kVisualDim);
  void Write(std::ostream& out) const;
  void WriteFile(const std::filesystem::path& path) const;

 private:
  int dim_;
  std::vector<int64_t> keys_;
  std::vector<double> data_;
};

}  // namespace whodunit::signal

#endif  // WHODUNIT_SIGNAL_VISUAL_STORE_H_
