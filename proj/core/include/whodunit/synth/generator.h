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

#ifndef WHODUNIT_SYNTH_GENERATOR_H_
#define WHODUNIT_SYNTH_GENERATOR_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "whodunit/corpus/interchange.h"
#include "whodunit/corpus/sentence.h"
#include "whodunit/nn/model_config.h"
#include "whodunit/signal/feature_cache.h"
#include "whodunit/signal/visual_store.h"
#include "whodunit/signal/vocab.h"
#include "whodunit/signal/wav.h"

namespace whodunit::synth {

// Generative model, per case of T sentences at positions t = 0..T-1:
//   g_t ~ Bernoulli(q)         trigger, rendered as a text token; q = trigger_rate
//   c_t ~ Bernoulli(p_c)       cue, rendered by every enabled channel
//   y_t = c_t                  when history_lag k = 0
//   y_t = c_t and g_{t-k}      when k > 0 (0 for t < k)
// with p_c chosen so that E[y] equals positive_rate. Sentences with y = 1
// mention the case's perpetrator; the rest mention another character. A
// disabled channel renders an independent coin instead of c_t.
struct SynthSpec {
  int n_episodes = 10;
  int cases_per_episode = 1;  // 1 or 2
  int min_sentences = 60;     // per case
  int max_sentences = 60;
  int min_characters = 3;
  int max_characters = 6;
  double positive_rate = 0.2;
  nn::Modalities channels;
  int history_lag = 0;
  double trigger_rate = 0.25;  // chance a sentence carries the trigger word
  int vocab_size = 4;     // filler words
  double pronoun_rate = 0;  // chance a sentence also carries a pronoun
  double audio_noise = 0.05;
  double visual_separation = 4.0;  // distance between the class means
  double visual_noise = 0.0255;    // per-dimension noise stddev, about 1/sqrt(1536)
  int visual_dim = signal::kVisualDim;
  int slot_ms = 200;  // duration of one sentence
  int embedding_dim = 50;
  uint64_t seed = 0;

  // Throws ConfigError for invalid or infeasible settings.
  void Validate() const;
  // Cue probability for a case of `sentences` sentences.
  double CueProbability(int sentences) const;

  std::map<std::string, std::string> ToKeyValues() const;
  // Missing keys keep their defaults; unknown keys throw ConfigError.
  static SynthSpec FromKeyValues(const std::map<std::string, std::string>& kv);
};

struct SentenceLatent {
  int position = 0;  // within the case
  int cue = 0;
  int trigger = 0;
  int label = 0;
};

struct SynthEpisode {
  std::vector<corpus::SentenceUnit> units;
  std::vector<SentenceLatent> latents;  // parallel to units
  signal::AudioTrack audio;
  signal::VisualStore visual;
};

struct SynthDataset {
  SynthSpec spec;
  std::vector<SynthEpisode> episodes;
  corpus::CrimeTypeMap case_meta;
  // Word vectors for every token the generator can emit, sorted by token.
  std::map<std::string, std::vector<double>> embeddings;
};

SynthDataset Generate(const SynthSpec& spec);

// Writes
//   corpus/<episode>.jsonl   interchange, timed
//   audio/<episode>.wav
//   visual/<episode>.txt     visual store
//   embeddings.txt           `token v1 .. vD` rows
//   cases.jsonl              crime types
//   latents.csv              generator latents, used by the Bayes oracle
//   spec.txt                 key = value echo of the spec
void WriteDataset(const SynthDataset& dataset, const std::filesystem::path& dir);
void WriteEmbeddings(std::ostream& out, const SynthDataset& dataset);

struct SynthFeatures {
  signal::EmbeddedVocab vocab;
  std::vector<signal::FeatureRecord> records;
};

// The records the featurize command produces for a written dataset, computed
// in memory through the same serializers.
SynthFeatures Featurize(const SynthDataset& dataset, int max_tokens, uint64_t seed);

struct LatentRow {
  std::string case_key;
  SentenceLatent latent;
};
void WriteLatentsCsv(std::ostream& out, const SynthDataset& dataset);
// Returns the spec echoed in the header and the rows.
std::pair<SynthSpec, std::vector<LatentRow>> ReadLatentsCsv(std::istream& in);

}  // namespace whodunit::synth

#endif  // WHODUNIT_SYNTH_GENERATOR_H_
