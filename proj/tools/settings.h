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

#ifndef WHODUNIT_TOOLS_SETTINGS_H_
#define WHODUNIT_TOOLS_SETTINGS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>

#include "whodunit/nn/model_config.h"
#include "whodunit/synth/generator.h"

namespace whodunit::cli {

// The flat key/value configuration of one invocation, after the config file
// and command-line flags have been merged. Typed getters throw ConfigError.
class Settings {
 public:
  std::map<std::string, std::string> values;
  std::set<std::string> given;  // keys set by file or flag

  bool Given(const std::string& key) const { return given.count(key) > 0; }
  const std::string& Get(const std::string& key) const;
  int GetInt(const std::string& key) const;
  uint64_t GetU64(const std::string& key) const;
  double GetDouble(const std::string& key) const;
  // Throws ConfigError when the key was not given.
  std::filesystem::path Require(const std::string& key) const;
  // Like Require, and the path must already exist.
  std::filesystem::path RequireExisting(const std::string& key) const;

  nn::TrainConfig Train() const;
  // Model hyperparameters; vocab_size is left at 0 for the caller to fill.
  nn::ModelConfig Model() const;
  synth::SynthSpec Synth() const;
};

}  // namespace whodunit::cli

#endif  // WHODUNIT_TOOLS_SETTINGS_H_
