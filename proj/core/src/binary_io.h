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

#ifndef WHODUNIT_SRC_BINARY_IO_H_
#define WHODUNIT_SRC_BINARY_IO_H_

// Little-endian primitives shared by the binary container formats.

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "whodunit/error.h"

namespace whodunit::internal {

class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& out) : out_(out) {}
  void U32(uint32_t v) { Le(v, 4); }
  void U64(uint64_t v) { Le(v, 8); }
  void I32(int32_t v) { U32(static_cast<uint32_t>(v)); }
  void U8(uint8_t v) { out_.put(static_cast<char>(v)); }
  void F32(double v) { U32(std::bit_cast<uint32_t>(static_cast<float>(v))); }
  void F64(double v) { U64(std::bit_cast<uint64_t>(v)); }
  void Bytes(const std::string& s) { out_.write(s.data(), static_cast<std::streamsize>(s.size())); }
  // u32 length prefix, then the bytes.
  void String(const std::string& s) {
    U32(static_cast<uint32_t>(s.size()));
    Bytes(s);
  }

 private:
  void Le(uint64_t v, int n) {
    char b[8];
    for (int i = 0; i < n; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out_.write(b, n);
  }
  std::ostream& out_;
};

class BinaryReader {
 public:
  // `what` names the container in truncation errors.
  BinaryReader(std::istream& in, std::string what) : in_(in), what_(std::move(what)) {}
  uint32_t U32() { return static_cast<uint32_t>(Le(4)); }
  uint64_t U64() { return Le(8); }
  int32_t I32() { return static_cast<int32_t>(U32()); }
  uint8_t U8() {
    unsigned char b;
    Read(&b, 1);
    return b;
  }
  float F32() { return std::bit_cast<float>(U32()); }
  double F64() { return std::bit_cast<double>(U64()); }
  std::string Bytes(size_t n) {
    std::string s(n, '\0');
    Read(s.data(), n);
    return s;
  }
  std::string String(size_t limit = 1 << 20) {
    const uint32_t n = U32();
    if (n > limit) throw Error("corrupt " + what_ + ": string length " + std::to_string(n));
    return Bytes(n);
  }
  void Read(void* dst, size_t n) {
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in_.gcount()) != n) throw Error("truncated " + what_);
  }

 private:
  uint64_t Le(int n) {
    unsigned char b[8];
    Read(b, n);
    uint64_t v = 0;
    for (int i = n - 1; i >= 0; --i) v = v << 8 | b[i];
    return v;
  }
  std::istream& in_;
  std::string what_;
};

}  // namespace whodunit::internal

#endif  // WHODUNIT_SRC_BINARY_IO_H_
