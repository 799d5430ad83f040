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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "whodunit/corpus/interchange.h"
#include "whodunit/corpus/stats.h"
#include "whodunit/error.h"
#include "whodunit/synth/bayes.h"
#include "whodunit/synth/generator.h"

namespace whodunit::synth {
namespace {

SynthSpec Small(int lag, const std::string& channels, uint64_t seed) {
  SynthSpec s;
  s.n_episodes = 12;
  s.history_lag = lag;
  s.channels = nn::Modalities::Parse(channels);
  s.visual_dim = 16;
  s.seed = seed;
  return s;
}

std::string Serialized(const SynthDataset& ds) {
  std::stringstream out;
  WriteLatentsCsv(out, ds);
  WriteEmbeddings(out, ds);
  for (const auto& ep : ds.episodes) {
    corpus::WriteInterchange(out, ep.units);
    signal::WriteWav(out, ep.audio);
    ep.visual.Write(out);
  }
  return out.str();
}

double Entropy(double p) { return p <= 0 || p >= 1 ? 0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

// Mutual information in bits between two binary sequences.
double MutualInformation(const std::vector<int>& x, const std::vector<int>& y) {
  double n[2][2] = {};
  for (size_t i = 0; i < x.size(); ++i) n[x[i]][y[i]] += 1;
  const double total = x.size();
  double mi = 0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double pab = n[a][b] / total;
      const double pa = (n[a][0] + n[a][1]) / total, pb = (n[0][b] + n[1][b]) / total;
      if (pab > 0) mi += pab * std::log2(pab / (pa * pb));
    }
  }
  return mi;
}

TEST(SynthTest, DeterministicGivenSeed) {
  const SynthSpec spec = Small(2, "T+V+A", 11);
  EXPECT_EQ(Serialized(Generate(spec)), Serialized(Generate(spec)));
  EXPECT_NE(Serialized(Generate(spec)), Serialized(Generate(Small(2, "T+V+A", 12))));
}

TEST(SynthTest, PositiveRateNearTarget) {
  for (int lag : {0, 3}) {
    for (int cases : {1, 2}) {
      SynthSpec spec = Small(lag, "T+V+A", 3);
      spec.cases_per_episode = cases;
      spec.min_sentences = 30;
      spec.max_sentences = 60;
      const SynthDataset ds = Generate(spec);
      int64_t n = 0, pos = 0;
      for (const auto& ep : ds.episodes) {
        for (const auto& u : ep.units) n += 1, pos += u.gold_label;
      }
      ASSERT_GE(n, 500);
      EXPECT_NEAR(static_cast<double>(pos) / n, spec.positive_rate, 0.05) << lag << " " << cases;
    }
  }
}

TEST(SynthTest, CorpusInvariants) {
  SynthSpec spec = Small(3, "T+V+A", 4);
  spec.cases_per_episode = 2;
  spec.pronoun_rate = 0.5;
  const SynthDataset ds = Generate(spec);
  for (const auto& ep : ds.episodes) {
    corpus::ValidateEpisode(ep.units);
    std::map<int, std::string> perpetrator;
    for (size_t i = 0; i < ep.units.size(); ++i) {
      const auto& u = ep.units[i];
      ASSERT_TRUE(u.start_ms && u.end_ms);
      int flagged = 0;
      for (size_t j = 0; j < u.tokens.size(); ++j) {
        if (u.token_labels[j] == corpus::TokenLabel::kPerpetrator) {
          ++flagged;
          auto [it, fresh] = perpetrator.emplace(*u.case_id, u.tokens[j]);
          EXPECT_EQ(it->second, u.tokens[j]);
        }
      }
      EXPECT_EQ(flagged > 0, u.gold_label == 1);
      EXPECT_EQ(ep.latents[i].label, u.gold_label);
    }
  }
  EXPECT_EQ(ds.case_meta.size(), 24u);
}

TEST(SynthTest, InfeasibleSpecThrows) {
  SynthSpec spec = Small(3, "T+V+A", 1);
  spec.positive_rate = 0.3;
  spec.trigger_rate = 0.25;  // needs a cue probability above 1
  EXPECT_THROW(Generate(spec), ConfigError);
  spec = Small(60, "T", 1);
  EXPECT_THROW(Generate(spec), ConfigError);
  spec = Small(0, "T", 1);
  spec.positive_rate = 1;
  EXPECT_THROW(Generate(spec), ConfigError);
  spec = Small(0, "T", 1);
  spec.cases_per_episode = 3;
  EXPECT_THROW(Generate(spec), ConfigError);
}

TEST(SynthTest, LatentsRoundTrip) {
  const SynthDataset ds = Generate(Small(3, "T+A", 8));
  std::stringstream buf;
  WriteLatentsCsv(buf, ds);
  auto [spec, rows] = ReadLatentsCsv(buf);
  EXPECT_EQ(spec.ToKeyValues(), ds.spec.ToKeyValues());
  EXPECT_EQ(BayesRate(rows, spec, true), BayesRate(ds, true));
  EXPECT_EQ(BayesRate(rows, spec, false), BayesRate(ds, false));
  std::stringstream junk("case,position\n1,2\n");
  EXPECT_THROW(ReadLatentsCsv(junk), Error);
}

// Independent memoryless oracle: the policy sees (cue, trigger) of the
// current sentence; try all 16 mappings.
double MemorylessOracle(const SynthDataset& ds) {
  int64_t pos[4] = {}, neg[4] = {}, total = 0;
  for (const auto& ep : ds.episodes) {
    for (const auto& l : ep.latents) {
      const int obs = l.cue + 2 * l.trigger;
      (l.label ? pos : neg)[obs] += 1;
      total += l.label;
    }
  }
  double best = 0;
  for (int policy = 0; policy < 16; ++policy) {
    int64_t tp = 0, fp = 0;
    for (int o = 0; o < 4; ++o) {
      if (policy >> o & 1) tp += pos[o], fp += neg[o];
    }
    if (tp > 0) best = std::max(best, 2.0 * tp / (2.0 * tp + fp + (total - tp)));
  }
  return best;
}

TEST(BayesTest, LagZeroIsDecidable) {
  const SynthDataset ds = Generate(Small(0, "T+V+A", 5));
  EXPECT_EQ(BayesRate(ds, true), 1.0);
  EXPECT_EQ(BayesRate(ds, false), 1.0);
}

TEST(BayesTest, LagThreeMatchesPlantedProbabilities) {
  SynthSpec spec = Small(3, "T+V+A", 7);
  spec.n_episodes = 200;
  spec.trigger_rate = 0.25;
  const SynthDataset ds = Generate(spec);
  const double memoryless = BayesRate(ds, true);
  EXPECT_EQ(BayesRate(ds, false), 1.0);
  EXPECT_LT(memoryless, 1.0);
  EXPECT_NEAR(memoryless, MemorylessOracle(ds), 1e-15);
  // Predicting every cue: precision r / p_c, recall 1.
  const double r = spec.positive_rate, pc = spec.CueProbability(60);
  EXPECT_NEAR(memoryless, 2 * r / (r + pc), 0.02);
  EXPECT_EQ(BayesRate(ds, true), memoryless);
}

TEST(SynthTest, DisabledChannelsCarryNoLabelInformation) {
  auto detect = [](const SynthDataset& ds) {
    std::vector<int> label, text, visual, audio;
    const auto& first = ds.episodes[0].visual;
    const auto head = first.Lookup(first.keys()[0]);
    const std::vector<double> anchor(head.begin(), head.end());
    for (const auto& ep : ds.episodes) {
      const int64_t slot = ds.spec.slot_ms * signal::kTargetSampleRate / 1000;
      for (size_t i = 0; i < ep.units.size(); ++i) {
        label.push_back(ep.units[i].gold_label);
        const auto& tokens = ep.units[i].tokens;
        text.push_back(std::count_if(tokens.begin(), tokens.end(), [](const std::string& w) {
                         return w == "knife" || w == "blood" || w == "motive" || w == "alibi";
                       }) > 0);
        double dot = 0;
        for (size_t d = 0; d < anchor.size(); ++d) dot += ep.visual.Lookup(ep.visual.keys()[i])[d] * anchor[d];
        visual.push_back(dot > 0);
        // Count zero crossings: 880 Hz crosses twice as often as 440 Hz.
        int crossings = 0;
        for (int64_t s = 1; s < slot; ++s) {
          crossings += (ep.audio.samples[i * slot + s - 1] < 0) != (ep.audio.samples[i * slot + s] < 0);
        }
        audio.push_back(crossings > 2 * 660 * ds.spec.slot_ms / 1000);
      }
    }
    return std::vector<double>{MutualInformation(text, label), MutualInformation(visual, label),
                               MutualInformation(audio, label)};
  };
  SynthSpec spec = Small(0, "T+V+A", 9);
  spec.n_episodes = 60;
  spec.visual_noise = 0.02;
  spec.audio_noise = 0.01;
  const double h = Entropy(spec.positive_rate);
  for (double mi : detect(Generate(spec))) EXPECT_GT(mi, 0.9 * h);
  spec.channels = nn::Modalities::Parse("T");
  auto only_text = detect(Generate(spec));
  EXPECT_GT(only_text[0], 0.9 * h);
  EXPECT_LT(only_text[1], 0.005);
  EXPECT_LT(only_text[2], 0.005);
  spec.channels = nn::Modalities::Parse("V+A");
  auto no_text = detect(Generate(spec));
  EXPECT_LT(no_text[0], 0.005);
  EXPECT_GT(no_text[1], 0.9 * h);
}

TEST(SynthTest, FeaturizeMatchesWrittenDataset) {
  SynthSpec spec = Small(1, "T+V+A", 13);
  spec.n_episodes = 3;
  const SynthDataset ds = Generate(spec);
  const SynthFeatures f = Featurize(ds, 10, 5);
  size_t sentences = 0;
  for (const auto& ep : ds.episodes) sentences += ep.units.size();
  ASSERT_EQ(f.records.size(), sentences);

  const auto dir = std::filesystem::temp_directory_path() / "whodunit_synth_test";
  std::filesystem::remove_all(dir);
  WriteDataset(ds, dir);
  for (const char* name : {"embeddings.txt", "cases.jsonl", "latents.csv", "spec.txt"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;
  }
  const auto units = corpus::ReadInterchangeFile(dir / "corpus" / "synth0001.jsonl");
  EXPECT_EQ(units.size(), ds.episodes[1].units.size());
  EXPECT_EQ(units[4].tokens, ds.episodes[1].units[4].tokens);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace whodunit::synth
