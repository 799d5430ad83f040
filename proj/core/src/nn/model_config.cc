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

#include "whodunit/nn/model_config.h"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "whodunit/error.h"

namespace whodunit::nn {
namespace {

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::string& Get(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ConfigError("model config lacks '" + key + "'");
  return it->second;
}

}  // namespace

std::string Modalities::ToString() const {
  std::string s;
  auto add = [&](bool on, const char* tag) {
    if (!on) return;
    if (!s.empty()) s += '+';
    s += tag;
  };
  add(text, "T");
  add(visual, "V");
  add(audio, "A");
  return s.empty() ? "none" : s;
}

Modalities Modalities::Parse(std::string_view spec) {
  Modalities m{false, false, false};
  for (char c : spec) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'T': m.text = true; break;
      case 'V': m.visual = true; break;
      case 'A': m.audio = true; break;
      case '+': case ',': case ' ': break;
      default:
        throw ConfigError("bad modality spec '" + std::string(spec) + "' (use letters T, V, A)");
    }
  }
  return m;
}

int ModelConfig::FusionInputDim() const {
  return (modalities.text ? SentenceDim() : 0) + (modalities.visual ? visual_dim : 0) +
         (modalities.audio ? acoustic_dim : 0);
}

void ModelConfig::Validate() const {
  if (vocab_size < 2) throw ConfigError("vocabulary needs at least the pad and unknown ids");
  if (embedding_dim <= 0 || conv_channels <= 0 || fusion_dim <= 0 || hidden_dim <= 0 ||
      visual_dim <= 0 || acoustic_dim <= 0) {
    throw ConfigError("model dimensions must be positive");
  }
  if (conv_widths.empty()) throw ConfigError("at least one convolution width is required");
  for (int w : conv_widths) {
    if (w <= 0 || w > max_tokens) throw ConfigError("convolution width must be in [1, max_tokens]");
  }
  if (!modalities.text) throw ConfigError("the textual modality must be enabled");
  if (crf_tokens <= 0) throw ConfigError("crf_tokens must be positive");
  if (crf_l2 < 0) throw ConfigError("crf_l2 must be non-negative");
}

std::map<std::string, std::string> ModelConfig::ToKeyValues() const {
  std::string widths;
  for (int w : conv_widths) widths += (widths.empty() ? "" : ",") + std::to_string(w);
  return {
      {"vocab_size", std::to_string(vocab_size)},
      {"embedding_dim", std::to_string(embedding_dim)},
      {"conv_widths", widths},
      {"conv_channels", std::to_string(conv_channels)},
      {"visual_dim", std::to_string(visual_dim)},
      {"acoustic_dim", std::to_string(acoustic_dim)},
      {"fusion_dim", std::to_string(fusion_dim)},
      {"hidden_dim", std::to_string(hidden_dim)},
      {"max_tokens", std::to_string(max_tokens)},
      {"crf_tokens", std::to_string(crf_tokens)},
      {"crf_l2", FormatDouble(crf_l2)},
      {"modalities", modalities.ToString()},
  };
}

ModelConfig ModelConfig::FromKeyValues(const std::map<std::string, std::string>& kv) {
  ModelConfig c;
  try {
    c.vocab_size = std::stoi(Get(kv, "vocab_size"));
    c.embedding_dim = std::stoi(Get(kv, "embedding_dim"));
    c.conv_widths.clear();
    std::stringstream widths(Get(kv, "conv_widths"));
    for (std::string w; std::getline(widths, w, ',');) c.conv_widths.push_back(std::stoi(w));
    c.conv_channels = std::stoi(Get(kv, "conv_channels"));
    c.visual_dim = std::stoi(Get(kv, "visual_dim"));
    c.acoustic_dim = std::stoi(Get(kv, "acoustic_dim"));
    c.fusion_dim = std::stoi(Get(kv, "fusion_dim"));
    c.hidden_dim = std::stoi(Get(kv, "hidden_dim"));
    c.max_tokens = std::stoi(Get(kv, "max_tokens"));
    c.crf_tokens = std::stoi(Get(kv, "crf_tokens"));
    c.crf_l2 = std::stod(Get(kv, "crf_l2"));
  } catch (const std::logic_error& e) {
    throw ConfigError(std::string("bad numeric model config value: ") + e.what());
  }
  c.modalities = Modalities::Parse(Get(kv, "modalities"));
  return c;
}

void TrainConfig::Validate() const {
  if (!(learning_rate > 0)) throw ConfigError("learning_rate must be positive");
  if (epochs <= 0) throw ConfigError("epochs must be positive");
  if (batch_cases <= 0) throw ConfigError("batch_cases must be positive");
  if (!(dropout >= 0 && dropout < 1)) throw ConfigError("dropout must lie in [0, 1)");
  if (runs <= 0) throw ConfigError("runs must be positive");
  if (!(beta1 >= 0 && beta1 < 1 && beta2 >= 0 && beta2 < 1 && epsilon > 0)) {
    throw ConfigError("bad ADAM hyperparameters");
  }
}

std::map<std::string, std::string> TrainConfig::ToKeyValues() const {
  return {
      {"learning_rate", FormatDouble(learning_rate)},
      {"epochs", std::to_string(epochs)},
      {"batch_cases", std::to_string(batch_cases)},
      {"dropout", FormatDouble(dropout)},
      {"seed", std::to_string(seed)},
      {"runs", std::to_string(runs)},
      {"adam_beta1", FormatDouble(beta1)},
      {"adam_beta2", FormatDouble(beta2)},
      {"adam_epsilon", FormatDouble(epsilon)},
  };
}

}  // namespace whodunit::nn
