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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "../support/mfcc_oracle.h"
#include "whodunit/error.h"
#include "whodunit/random.h"
#include "whodunit/signal/audio_features.h"
#include "whodunit/signal/feature_cache.h"
#include "whodunit/signal/fft.h"
#include "whodunit/signal/mfcc.h"
#include "whodunit/signal/visual_store.h"
#include "whodunit/signal/vocab.h"
#include "whodunit/signal/wav.h"

namespace whodunit::signal {
namespace {

AudioTrack Tone(double hz, double seconds, double amplitude = 0.5) {
  AudioTrack t;
  t.samples.resize(static_cast<size_t>(seconds * t.sample_rate));
  for (size_t n = 0; n < t.samples.size(); ++n) {
    t.samples[n] = static_cast<float>(amplitude * std::sin(2 * std::numbers::pi * hz * n / t.sample_rate));
  }
  return t;
}

AudioTrack Noise(uint64_t seed, size_t n) {
  Rng rng(seed);
  AudioTrack t;
  t.samples.resize(n);
  for (auto& s : t.samples) s = static_cast<float>(rng.Uniform(-1, 1));
  return t;
}

TEST(FftTest, MatchesDirectDft) {
  Fft fft(64);
  Rng rng(1);
  std::vector<double> x(50);
  for (double& v : x) v = rng.Normal();
  std::vector<double> power;
  fft.PowerSpectrum(x, &power);
  ASSERT_EQ(power.size(), 33u);
  for (int k = 0; k <= 32; ++k) {
    std::complex<double> s = 0;
    for (int n = 0; n < 50; ++n) s += x[n] * std::polar(1.0, -2 * std::numbers::pi * k * n / 64);
    EXPECT_NEAR(power[k], std::norm(s), 1e-9);
  }
  EXPECT_THROW(Fft(48), Error);
}

TEST(MfccTest, FrameCount) {
  MfccComputer mfcc;
  EXPECT_EQ(mfcc.NumFrames(16000), 196);
  EXPECT_EQ(mfcc.Frames(Tone(440, 1.0)).size(), 196u);
  EXPECT_EQ(mfcc.NumFrames(399), 0);
  AudioTrack short_track;
  short_track.samples.resize(399);
  EXPECT_THROW(mfcc.Frames(short_track), Error);
}

TEST(MfccTest, SilenceGivesFloorImpulse) {
  MfccComputer mfcc;
  AudioTrack silence;
  silence.samples.assign(1600, 0.0f);
  auto frames = mfcc.Frames(silence);
  // Orthonormal DCT-II of a constant vector: c0 = sqrt(26) * ln(floor).
  for (const auto& f : frames) {
    EXPECT_EQ(f, frames[0]);
    EXPECT_NEAR(f[0], std::sqrt(26.0) * std::log(1e-10), 1e-9);
    for (int i = 1; i < 13; ++i) EXPECT_NEAR(f[i], 0.0, 1e-9);
  }
}

TEST(MfccTest, PureToneLandsInNearestFilter) {
  MfccComputer mfcc;
  testing::MfccOracle oracle;
  AudioTrack tone = Tone(1000, 0.1);
  auto energies = mfcc.FilterbankEnergies(tone.samples, 3);
  auto reference = oracle.Energies(std::span(tone.samples).subspan(3 * 80, 400));
  int nearest = 0;
  for (int m = 0; m < 26; ++m) {
    if (std::abs(oracle.Center(m) - 1000) < std::abs(oracle.Center(nearest) - 1000)) nearest = m;
  }
  EXPECT_EQ(std::max_element(energies.begin(), energies.end()) - energies.begin(), nearest);
  EXPECT_EQ(std::max_element(reference.begin(), reference.end()) - reference.begin(), nearest);
}

TEST(MfccTest, MatchesDirectDftOracle) {
  MfccComputer mfcc;
  testing::MfccOracle oracle;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    AudioTrack t = Noise(seed, 1600);
    auto frames = mfcc.Frames(t);
    for (int f : {0, 7, static_cast<int>(frames.size()) - 1}) {
      auto ref = oracle.Coefficients(std::span(t.samples).subspan(f * 80, 400));
      for (int i = 0; i < 13; ++i) EXPECT_NEAR(frames[f][i], ref[i], 1e-6);
    }
  }
}

TEST(MfccTest, ShiftByOneHopShiftsFrames) {
  MfccComputer mfcc;
  AudioTrack t = Noise(9, 4000);
  AudioTrack shifted;
  shifted.samples.assign(80, 0.25f);
  shifted.samples.insert(shifted.samples.end(), t.samples.begin(), t.samples.end());
  auto a = mfcc.Frames(t);
  auto b = mfcc.Frames(shifted);
  ASSERT_EQ(b.size(), a.size() + 1);
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i + 1]);
  EXPECT_EQ(mfcc.Frames(t), a);
}

TEST(AudioFeatureTest, CenterTime) {
  EXPECT_EQ(CenterTimeMs(2000, 4000), 3000);
  EXPECT_EQ(CenterTimeMs(0, 0), 0);
  EXPECT_EQ(CenterTimeMs(1, 2), 1);
}

TEST(AudioFeatureTest, FrameTargets) {
  MfccComputer mfcc;
  auto idx = SentenceFrameIndices(mfcc, 196, 0, 600);
  // Frame i is centred at 5i + 12.5 ms; 100 ms ties between 17 and 18.
  EXPECT_EQ(idx, (std::array<int, 5>{17, 37, 57, 77, 97}));
  auto zero = SentenceFrameIndices(mfcc, 196, 300, 300);
  for (int i : zero) EXPECT_EQ(i, zero[0]);
}

TEST(AudioFeatureTest, LengthAndStationarity) {
  MfccComputer mfcc;
  AudioTrack tone = Tone(440, 1.0);
  for (auto [s, e] : std::vector<std::pair<int, int>>{{0, 600}, {100, 110}, {500, 500}, {0, 1000}}) {
    auto x = SentenceAudioFeature(mfcc, tone, s, e);
    ASSERT_EQ(x.size(), 65u);
  }
  AudioTrack dc;
  dc.samples.assign(16000, 0.3f);
  auto x = SentenceAudioFeature(mfcc, dc, 100, 900);
  for (int k = 1; k < 5; ++k) {
    for (int i = 0; i < 13; ++i) EXPECT_EQ(x[k * 13 + i], x[i]);
  }
  EXPECT_THROW(SentenceAudioFeature(mfcc, tone, 900, 100), Error);
  EXPECT_THROW(SentenceAudioFeature(mfcc, tone, 500, 5000), Error);
}

TEST(VisualStoreTest, NearestWithEarlierTie) {
  VisualStore store(2);
  store.Add(1000, std::vector<double>{1, 1});
  store.Add(3000, std::vector<double>{2, 2});
  EXPECT_EQ(store.Lookup(1200)[0], 1);
  EXPECT_EQ(store.Lookup(2000)[0], 1);
  EXPECT_EQ(store.Lookup(2001)[0], 2);
  EXPECT_THROW(VisualStore(2).Lookup(0), Error);
  EXPECT_THROW(store.Add(3000, std::vector<double>{0, 0}), Error);
}

TEST(VisualStoreTest, LoadRejectsWrongDimension) {
  std::string row = "dim=1536\n0";
  for (int i = 0; i < 1535; ++i) row += " 0.5";
  std::istringstream in(row + "\n");
  EXPECT_THROW(VisualStore::Read(in), ParseError);

  VisualStore store(3);
  store.Add(5, std::vector<double>{0.1, -2, 1e-9});
  std::stringstream buf;
  store.Write(buf);
  VisualStore back = VisualStore::Read(buf, 3);
  EXPECT_EQ(back.keys()[0], 5);
  EXPECT_EQ(back.Lookup(5)[2], 1e-9);
}

corpus::SentenceUnit Utter(std::vector<std::string> tokens, int64_t start, int64_t end) {
  corpus::SentenceUnit u;
  u.episode_id = "e";
  u.speaker = "A";
  u.tokens = std::move(tokens);
  u.token_labels.assign(u.tokens.size(), corpus::TokenLabel::kNone);
  u.start_ms = start;
  u.end_ms = end;
  return u;
}

TEST(VocabTest, BuildFromEmbeddings) {
  std::vector<corpus::SentenceUnit> corpus = {Utter({"cat", "zebra", "dog"}, 0, 1)};
  std::string dog = "dog", cat = "cat", other = "other";
  for (int i = 0; i < 3; ++i) {
    dog += " 0.125";
    cat += " -1.5e-3";
    other += " 9";
  }
  std::istringstream in(dog + "\n" + other + "\n" + cat + "\n");
  EmbeddedVocab ev = BuildVocab(corpus, in, 3, 1);
  EXPECT_EQ(ev.vocab.size(), 4);
  EXPECT_EQ(ev.vocab.Id("cat"), 2);
  EXPECT_EQ(ev.vocab.Id("dog"), 3);
  EXPECT_EQ(ev.vocab.Id("zebra"), Vocab::kUnkId);
  EXPECT_EQ(ev.vocab.Id("other"), Vocab::kUnkId);
  EXPECT_EQ(ev.table(3, 1), 0.125);
  EXPECT_EQ(ev.table(2, 0), -1.5e-3);
  EXPECT_TRUE(ev.table.row(0).isZero());
  EXPECT_FALSE(ev.table.row(1).isZero());

  std::istringstream bad("dog 1 2\n");
  EXPECT_THROW(BuildVocab(corpus, bad, 3, 1), ParseError);
}

TEST(VocabTest, TableRoundTrip) {
  std::vector<corpus::SentenceUnit> corpus = {Utter({"a", "b"}, 0, 1)};
  std::istringstream in("a 0.1 0.2\nb 0.3 0.4\n");
  EmbeddedVocab ev = BuildVocab(corpus, in, 2, 4);
  std::stringstream buf;
  WriteEmbeddingTable(buf, ev);
  EmbeddedVocab back = ReadEmbeddingTable(buf);
  EXPECT_EQ(back.table, ev.table);
  EXPECT_EQ(back.vocab.Id("b"), ev.vocab.Id("b"));
}

TEST(WavTest, RoundTripAndStereo) {
  AudioTrack t = Tone(300, 0.05);
  std::stringstream buf;
  WriteWav(buf, t);
  AudioTrack back = ReadWav(buf);
  ASSERT_EQ(back.samples.size(), t.samples.size());
  for (size_t i = 0; i < t.samples.size(); ++i) EXPECT_NEAR(back.samples[i], t.samples[i], 1.0 / 32768);

  AudioTrack up = Resample(t, 32000);
  EXPECT_EQ(up.sample_rate, 32000);
  EXPECT_NEAR(static_cast<double>(up.samples.size()), 2.0 * t.samples.size(), 2);
  EXPECT_EQ(Resample(t, 16000).samples, t.samples);
}

TEST(FeatureCacheTest, BundleShapesAndRoundTrip) {
  MfccComputer mfcc;
  AudioTrack track = Tone(880, 1.0);
  VisualStore visual(kVisualDim);
  std::vector<double> v(kVisualDim, 0.5);
  visual.Add(250, v);
  v[0] = -1;
  visual.Add(750, v);
  Vocab vocab;
  vocab.Add("hello");
  std::vector<corpus::SentenceUnit> units = {Utter({"hello", "there"}, 0, 400),
                                             Utter({"x", "y", "z", "hello"}, 400, 1000)};
  units[1].seq_index = 1;
  units[1].case_id = 0;
  auto records = FeaturizeEpisode(units, vocab, track, visual, mfcc, 3);
  ASSERT_EQ(records.size(), 2u);
  for (const auto& r : records) {
    EXPECT_EQ(r.bundle.x_v.size(), kVisualDim);
    EXPECT_EQ(r.bundle.x_a.size(), kAcousticDim);
    EXPECT_EQ(r.bundle.token_ids.size(), 3u);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(r.bundle.mask[k] != 0, r.bundle.token_ids[k] != Vocab::kPadId);
  }
  EXPECT_EQ(records[0].bundle.token_ids, (std::vector<int32_t>{2, 1, 0}));
  EXPECT_EQ(records[1].bundle.x_v[0], -1);
  EXPECT_EQ(records[0].case_id, -1);
  EXPECT_EQ(records[1].case_id, 0);

  QuantizeToCachePrecision(records);
  std::stringstream buf;
  WriteFeatureCache(buf, records);
  EXPECT_EQ(buf.str().substr(0, 4), "WDF1");
  auto back = ReadFeatureCache(buf);
  ASSERT_EQ(back.size(), 2u);
  for (size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].bundle.token_ids, records[i].bundle.token_ids);
    EXPECT_EQ(back[i].bundle.mask, records[i].bundle.mask);
    EXPECT_EQ(back[i].bundle.x_v, records[i].bundle.x_v);
    EXPECT_EQ(back[i].bundle.x_a, records[i].bundle.x_a);
    EXPECT_EQ(back[i].seq_index, records[i].seq_index);
  }
  std::string truncated = buf.str().substr(0, buf.str().size() - 3);
  std::istringstream cut(truncated);
  EXPECT_THROW(ReadFeatureCache(cut), Error);
}

}  // namespace
}  // namespace whodunit::signal
