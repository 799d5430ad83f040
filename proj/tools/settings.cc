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

#include "settings.h"

#include <charconv>
#include <sstream>

#include "whodunit/baselines/mlp_tagger.h"
#include "whodunit/error.h"

namespace whodunit::cli {
namespace {

template <typename T>
T ParseNumber(const std::string& key, const std::string& s) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ConfigError("bad value for " + key + ": '" + s + "'");
  }
  return v;
}

}  // namespace

const std::string& Settings::Get(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw ConfigError("unknown key '" + key + "'");
  return it->second;
}

int Settings::GetInt(const std::string& key) const { return ParseNumber<int>(key, Get(key)); }

uint64_t Settings::GetU64(const std::string& key) const {
  return ParseNumber<uint64_t>(key, Get(key));
}

double Settings::GetDouble(const std::string& key) const {
  return ParseNumber<double>(key, Get(key));
}

std::filesystem::path Settings::Require(const std::string& key) const {
  if (Get(key).empty()) throw ConfigError("missing required key '" + key + "'");
  return Get(key);
}

std::filesystem::path Settings::RequireExisting(const std::string& key) const {
  std::filesystem::path p = Require(key);
  if (!std::filesystem::exists(p)) {
    throw ConfigError(key + " '" + p.string() + "' does not exist");
  }
  return p;
}

nn::TrainConfig Settings::Train() const {
  nn::TrainConfig c;
  c.learning_rate = GetDouble("learning_rate");
  // The per-sentence MLP uses its own default rate unless one is given.
  if (Get("model") == "mlp" && !Given("learning_rate")) c.learning_rate = baselines::kMlpLearningRate;
  c.epochs = GetInt("epochs");
  c.batch_cases = GetInt("batch_cases");
  c.dropout = GetDouble("dropout");
  c.seed = GetU64("seed");
  c.runs = GetInt("runs");
  c.beta1 = GetDouble("adam_beta1");
  c.beta2 = GetDouble("adam_beta2");
  c.epsilon = GetDouble("adam_epsilon");
  c.Validate();
  return c;
}

nn::ModelConfig Settings::Model() const {
  nn::ModelConfig c;
  c.embedding_dim = GetInt("embedding_dim");
  c.conv_widths.clear();
  std::stringstream widths(Get("conv_widths"));
  for (std::string w; std::getline(widths, w, ',');) {
    c.conv_widths.push_back(ParseNumber<int>("conv_widths", w));
  }
  c.conv_channels = GetInt("conv_channels");
  c.visual_dim = GetInt("visual_dim");
  c.fusion_dim = GetInt("fusion_dim");
  c.hidden_dim = GetInt("hidden_dim");
  c.max_tokens = GetInt("max_tokens");
  c.crf_tokens = GetInt("crf_tokens");
  c.crf_l2 = GetDouble("crf_l2");
  // The CRF is text-only unless modalities are requested explicitly.
  c.modalities = nn::Modalities::Parse(
      Get("model") == "crf" && !Given("modalities") ? "T" : Get("modalities"));
  return c;
}

synth::SynthSpec Settings::Synth() const {
  synth::SynthSpec s;
  s.n_episodes = GetInt("synth_episodes");
  s.cases_per_episode = GetInt("synth_cases_per_episode");
  s.min_sentences = GetInt("synth_min_sentences");
  s.max_sentences = GetInt("synth_max_sentences");
  s.min_characters = GetInt("synth_min_characters");
  s.max_characters = GetInt("synth_max_characters");
  s.positive_rate = GetDouble("synth_positive_rate");
  s.channels = nn::Modalities::Parse(Get("synth_channels"));
  s.history_lag = GetInt("synth_history_lag");
  s.trigger_rate = GetDouble("synth_trigger_rate");
  s.vocab_size = GetInt("synth_vocab_size");
  s.pronoun_rate = GetDouble("synth_pronoun_rate");
  s.audio_noise = GetDouble("synth_audio_noise");
  s.visual_separation = GetDouble("synth_visual_separation");
  s.visual_noise = GetDouble("synth_visual_noise");
  s.visual_dim = GetInt("visual_dim");
  s.slot_ms = GetInt("synth_slot_ms");
  s.embedding_dim = GetInt("embedding_dim");
  s.seed = GetU64("seed");
  s.Validate();
  return s;
}

}  // namespace whodunit::cli
