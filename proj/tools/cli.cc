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

#include "cli.h"

#include <functional>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "manifest.h"
#include "settings.h"
#include "whodunit/error.h"

namespace whodunit::cli {
namespace {

struct Key {
  const char* name;
  const char* fallback;
  const char* help;
  bool existing_path = false;  // must exist whenever it is given
};

const std::vector<Key>& Keys() {
  static const std::vector<Key> keys = {
      // Paths.
      {"screenplay", "", "screenplay .txt file or directory", true},
      {"captions", "", "SRT file or directory of <episode>.srt", true},
      {"corpus", "", "interchange .jsonl file or directory", true},
      {"case_meta", "", "case metadata .jsonl", true},
      {"embeddings", "", "word embedding text file", true},
      {"audio_dir", "", "directory of <episode>.wav", true},
      {"visual_dir", "", "directory of <episode>.txt visual stores", true},
      {"pronouns", "", "pronoun lexicon, one per line", true},
      {"traces", "", "traces.csv written by eval", true},
      {"cache_dir", "", "feature cache directory"},
      {"checkpoint_dir", "", "checkpoint directory (default <output_dir>/checkpoints)"},
      {"output_dir", "", "output directory"},
      // Training.
      {"model", "lstm", "lstm, mlp, crf or pro"},
      {"learning_rate", "0.001", "ADAM learning rate (mlp default 0.0001)"},
      {"epochs", "100", "epochs per run"},
      {"batch_cases", "6", "cases per mini-batch"},
      {"dropout", "0.5", "dropout rate"},
      {"seed", "0", "root seed for every random choice"},
      {"runs", "5", "independent runs per fold"},
      {"adam_beta1", "0.9", "ADAM beta1"},
      {"adam_beta2", "0.999", "ADAM beta2"},
      {"adam_epsilon", "1e-08", "ADAM epsilon"},
      // Model.
      {"modalities", "T+V+A", "enabled inputs (crf default T)"},
      {"embedding_dim", "50", "word embedding size"},
      {"conv_widths", "3,4,5", "convolution widths"},
      {"conv_channels", "75", "channels per convolution width"},
      {"fusion_dim", "300", "fusion layer size"},
      {"hidden_dim", "128", "LSTM state / MLP layer size"},
      {"max_tokens", "60", "token slots per sentence"},
      {"visual_dim", "1536", "visual feature size"},
      {"crf_tokens", "20", "leading tokens in CRF features"},
      {"crf_l2", "0.0001", "CRF L2 weight"},
      // Splits and evaluation.
      {"held_out", "6", "held-out cases"},
      {"test_per_fold", "6", "test cases per fold"},
      {"folds", "5", "cross-validation folds"},
      {"fold", "-1", "single fold to process (-1: all)"},
      {"intervals", "100", "intervals in the progress curves"},
      {"skip_penalty", "0.5", "alignment skip cost"},
      // Synthetic data.
      {"synth_episodes", "10", "episodes"},
      {"synth_cases_per_episode", "1", "cases per episode (1 or 2)"},
      {"synth_min_sentences", "60", "minimum sentences per case"},
      {"synth_max_sentences", "60", "maximum sentences per case"},
      {"synth_min_characters", "3", "minimum characters per case"},
      {"synth_max_characters", "6", "maximum characters per case"},
      {"synth_positive_rate", "0.2", "target share of perpetrator sentences"},
      {"synth_channels", "T+V+A", "channels carrying the cue"},
      {"synth_history_lag", "0", "trigger lag"},
      {"synth_trigger_rate", "0.25", "share of sentences carrying the trigger"},
      {"synth_vocab_size", "4", "filler words"},
      {"synth_pronoun_rate", "0", "share of sentences with a pronoun"},
      {"synth_audio_noise", "0.05", "audio noise standard deviation"},
      {"synth_visual_separation", "4", "distance between visual class means"},
      {"synth_visual_noise", "0.0255", "per-dimension visual noise stddev"},
      {"synth_slot_ms", "200", "duration of one sentence"},
  };
  return keys;
}

using Handler = std::function<void(const Settings&, std::ostream&)>;

const std::vector<std::pair<std::string, Handler>>& Commands() {
  static const std::vector<std::pair<std::string, Handler>> commands = {
      {"parse", RunParse},     {"align", RunAlign}, {"featurize", RunFeaturize},
      {"synth", RunSynth},     {"train", RunTrain}, {"eval", RunEval},
      {"report", RunReport}};
  return commands;
}

const char* Description(const std::string& command) {
  static const std::map<std::string, const char*> text = {
      {"parse", "screenplays to interchange JSON-lines; corpus statistics"},
      {"align", "align utterances to captions and assign time spans"},
      {"featurize", "build the per-sentence feature cache"},
      {"synth", "generate a synthetic dataset"},
      {"train", "train a tagger on each fold"},
      {"eval", "score checkpoints (or the pronoun rule) and write reports"},
      {"report", "regenerate reports from traces.csv"}};
  return text.at(command);
}

}  // namespace

Settings DefaultSettings() {
  Settings settings;
  for (const auto& k : Keys()) settings.values[k.name] = k.fallback;
  return settings;
}

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Incremental perpetrator identification toolkit", "whodunit");
  app.set_config("--config", "", "key = value configuration file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);

  Settings settings = DefaultSettings();
  std::map<std::string, CLI::Option*> options;
  for (const auto& k : Keys()) {
    CLI::Option* opt = app.add_option(std::string("--") + k.name, settings.values[k.name], k.help)
                           ->capture_default_str();
    if (k.existing_path) opt->check(CLI::ExistingPath);
    options[k.name] = opt;
  }
  std::string command;
  for (const auto& [name, handler] : Commands()) {
    CLI::App* sub = app.add_subcommand(name, Description(name));
    sub->fallthrough();
    sub->callback([&command, name = name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "whodunit: " << e.what() << '\n';
    return kExitUsage;
  }
  for (const auto& [name, opt] : options) {
    if (opt->count() > 0) settings.given.insert(name);
  }

  try {
    const CommandPlan plan = PlanFor(command);
    std::vector<InputDigest> inputs;
    for (const auto& key : plan.input_keys) {
      const std::string& p = settings.Get(key);
      if (p.empty() || !std::filesystem::exists(p)) continue;
      inputs.push_back({key, p, DigestTree(p)});
    }
    for (const auto& [name, handler] : Commands()) {
      if (name == command) handler(settings, out);
    }
    WriteManifest(settings.Require(plan.manifest_key), command, settings, inputs);
  } catch (const ConfigError& e) {
    err << "whodunit " << command << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "whodunit " << command << ": " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace whodunit::cli
