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

#ifndef WHODUNIT_NN_MODEL_CONFIG_H_
#define WHODUNIT_NN_MODEL_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace whodunit::nn {

// Which input modalities feed the fusion layer.
struct Modalities {
  bool text = true;
  bool visual = true;
  bool audio = true;

  // "T", "T+V", "T+V+A", ...
  std::string ToString() const;
  // Accepts "T+V+A", "tva", "T,A" and similar spellings.
  static Modalities Parse(std::string_view spec);
  bool operator==(const Modalities&) const = default;
};

// Architecture hyperparameters shared by the LSTM, MLP and CRF taggers.
struct ModelConfig {
  int vocab_size = 0;
  int embedding_dim = 50;
  std::vector<int> conv_widths = {3, 4, 5};
  int conv_channels = 75;
  int visual_dim = 1536;
  int acoustic_dim = 65;
  int fusion_dim = 300;
  int hidden_dim = 128;      // LSTM state size and MLP layer size
  int max_tokens = 60;
  int crf_tokens = 20;       // leading tokens whose embeddings form CRF features
  double crf_l2 = 1e-4;
  Modalities modalities;

  int SentenceDim() const { return static_cast<int>(conv_widths.size()) * conv_channels; }
  // Width of the concatenated [x_s; x_v; x_a] vector for the enabled modalities.
  int FusionInputDim() const;
  // Throws ConfigError on inconsistent values. Neural taggers require text.
  void Validate() const;

  std::map<std::string, std::string> ToKeyValues() const;
  static ModelConfig FromKeyValues(const std::map<std::string, std::string>& kv);
  bool operator==(const ModelConfig&) const = default;
};

struct TrainConfig {
  double learning_rate = 0.001;
  int epochs = 100;
  int batch_cases = 6;
  double dropout = 0.5;
  uint64_t seed = 0;
  int runs = 5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void Validate() const;
  std::map<std::string, std::string> ToKeyValues() const;
};

}  // namespace whodunit::nn

#endif  // WHODUNIT_NN_MODEL_CONFIG_H_
