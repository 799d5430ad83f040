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

#include "whodunit/signal/wav.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>

#include "whodunit/error.h"

namespace whodunit::signal {
namespace {

uint32_t ReadU32(const unsigned char* p) {
  return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 | uint32_t(p[3]) << 24;
}
uint16_t ReadU16(const unsigned char* p) { return uint16_t(p[0] | p[1] << 8); }

void PutU32(std::ostream& out, uint32_t v) {
  const char b[4] = {char(v & 0xff), char(v >> 8 & 0xff), char(v >> 16 & 0xff),
                     char(v >> 24 & 0xff)};
  out.write(b, 4);
}
void PutU16(std::ostream& out, uint16_t v) {
  const char b[2] = {char(v & 0xff), char(v >> 8 & 0xff)};
  out.write(b, 2);
}

}  // namespace

AudioTrack ReadWav(std::istream& in) {
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error("not a RIFF/WAVE stream");
  }
  int channels = 0, bits = 0, rate = 0;
  bool have_fmt = false;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const uint32_t size = ReadU32(chunk + 4);
    const size_t body = pos + 8;
    if (body + size > bytes.size() && std::memcmp(chunk, "data", 4) != 0) {
      throw Error("truncated WAV chunk");
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw Error("short fmt chunk");
      const uint16_t format = ReadU16(bytes.data() + body);
      channels = ReadU16(bytes.data() + body + 2);
      rate = static_cast<int>(ReadU32(bytes.data() + body + 4));
      bits = ReadU16(bytes.data() + body + 14);
      if (format != 1 && format != 0xFFFE) throw Error("WAV is not PCM");
      if (bits != 16) throw Error("only 16-bit PCM WAV is supported");
      if (channels <= 0 || rate <= 0) throw Error("invalid WAV format fields");
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw Error("WAV data chunk before fmt chunk");
      const size_t available = std::min<size_t>(size, bytes.size() - body);
      const size_t frames = available / (2 * static_cast<size_t>(channels));
      AudioTrack track;
      track.sample_rate = rate;
      track.samples.resize(frames);
      const unsigned char* p = bytes.data() + body;
      for (size_t f = 0; f < frames; ++f) {
        double sum = 0;
        for (int c = 0; c < channels; ++c, p += 2) {
          sum += static_cast<int16_t>(ReadU16(p)) / 32768.0;
        }
        track.samples[f] = static_cast<float>(sum / channels);
      }
      return track;
    }
    pos = body + size + (size & 1);
  }
  throw Error("WAV stream has no data chunk");
}

AudioTrack ReadWavFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return ReadWav(in);
}

void WriteWav(std::ostream& out, const AudioTrack& track) {
  const uint32_t data_bytes = static_cast<uint32_t>(track.samples.size() * 2);
  out.write("RIFF", 4);
  PutU32(out, 36 + data_bytes);
  out.write("WAVEfmt ", 8);
  PutU32(out, 16);
  PutU16(out, 1);
  PutU16(out, 1);
  PutU32(out, static_cast<uint32_t>(track.sample_rate));
  PutU32(out, static_cast<uint32_t>(track.sample_rate * 2));
  PutU16(out, 2);
  PutU16(out, 16);
  out.write("data", 4);
  PutU32(out, data_bytes);
  for (float s : track.samples) {
    const double clipped = std::clamp(static_cast<double>(s), -1.0, 32767.0 / 32768.0);
    PutU16(out, static_cast<uint16_t>(static_cast<int16_t>(std::lround(clipped * 32768.0))));
  }
}

void WriteWavFile(const std::filesystem::path& path, const AudioTrack& track) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  WriteWav(out, track);
}

AudioTrack Resample(const AudioTrack& track, int target_rate) {
  if (track.sample_rate <= 0 || target_rate <= 0) throw Error("sample rate must be positive");
  if (track.sample_rate == target_rate) return track;
  AudioTrack out;
  out.sample_rate = target_rate;
  const size_t n = track.samples.size();
  const size_t m = n * static_cast<size_t>(target_rate) / static_cast<size_t>(track.sample_rate);
  out.samples.resize(m);
  const double step = static_cast<double>(track.sample_rate) / target_rate;
  for (size_t k = 0; k < m; ++k) {
    const double t = static_cast<double>(k) * step;
    const size_t i = static_cast<size_t>(t);
    const double frac = t - static_cast<double>(i);
    const double a = track.samples[std::min(i, n - 1)];
    const double b = track.samples[std::min(i + 1, n - 1)];
    out.samples[k] = static_cast<float>(a + frac * (b - a));
  }
  return out;
}

}  // namespace whodunit::signal
