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

#include "commands.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "whodunit/align/dtw.h"
#include "whodunit/align/timeline.h"
#include "whodunit/baselines/models.h"
#include "whodunit/baselines/pronoun.h"
#include "whodunit/corpus/interchange.h"
#include "whodunit/corpus/screenplay.h"
#include "whodunit/corpus/srt.h"
#include "whodunit/corpus/stats.h"
#include "whodunit/error.h"
#include "whodunit/eval/report.h"
#include "whodunit/eval/splits.h"
#include "whodunit/nn/checkpoint.h"
#include "whodunit/nn/trainer.h"
#include "whodunit/signal/feature_cache.h"
#include "whodunit/signal/mfcc.h"
#include "whodunit/signal/visual_store.h"
#include "whodunit/signal/vocab.h"
#include "whodunit/signal/wav.h"
#include "whodunit/synth/generator.h"

namespace whodunit::cli {
namespace fs = std::filesystem;
namespace {

constexpr char kCacheExtension[] = ".wdf";
constexpr char kVocabFile[] = "vocab_embeddings.txt";

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::ofstream OpenOut(const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

// Files with `extension` in a directory, sorted; a plain file is returned as is.
std::vector<fs::path> ListInputs(const fs::path& path, const std::string& extension) {
  if (!fs::is_directory(path)) return {path};
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(path)) {
    if (e.is_regular_file() && e.path().extension() == extension) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error("no " + extension + " files in " + path.string());
  return files;
}

// File `<dir>/<episode><ext>`, or `path` itself when it is a file.
fs::path EpisodeFile(const fs::path& path, const std::string& episode, const std::string& ext) {
  if (!fs::is_directory(path)) return path;
  fs::path p = path / (episode + ext);
  if (!fs::exists(p)) throw Error("missing " + p.string());
  return p;
}

corpus::CrimeTypeMap LoadCaseMeta(const Settings& s) {
  if (s.Get("case_meta").empty()) return {};
  std::ifstream in(s.Get("case_meta"));
  return corpus::ReadCaseMeta(in);
}

std::vector<signal::FeatureRecord> LoadCache(const fs::path& dir) {
  std::vector<signal::FeatureRecord> records;
  for (const auto& f : ListInputs(dir, kCacheExtension)) {
    auto part = signal::ReadFeatureCacheFile(f);
    std::move(part.begin(), part.end(), std::back_inserter(records));
  }
  return records;
}

struct CacheData {
  signal::EmbeddedVocab vocab;
  std::vector<nn::CaseSequence> cases;
  std::map<std::string, const nn::CaseSequence*> by_key;
};

CacheData LoadCacheData(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ConfigError("cache_dir '" + dir.string() + "' does not exist");
  CacheData d;
  d.vocab = signal::ReadEmbeddingTableFile(dir / kVocabFile);
  d.cases = nn::GroupCaseSequences(LoadCache(dir));
  if (d.cases.empty()) throw Error("feature cache holds no cases");
  for (const auto& c : d.cases) d.by_key[c.key] = &c;
  return d;
}

nn::ModelConfig ModelFor(const Settings& s, const CacheData& d) {
  nn::ModelConfig c = s.Model();
  c.vocab_size = d.vocab.vocab.size();
  if (d.vocab.table.cols() != c.embedding_dim) {
    throw ConfigError("embedding_dim " + std::to_string(c.embedding_dim) +
                      " differs from the cached table's " + std::to_string(d.vocab.table.cols()));
  }
  const auto& first = d.cases.front().steps.front();
  if (static_cast<int>(first.token_ids.size()) != c.max_tokens) {
    throw ConfigError("max_tokens " + std::to_string(c.max_tokens) + " differs from the cache's " +
                      std::to_string(first.token_ids.size()));
  }
  c.Validate();
  return c;
}

eval::SplitPlan PlanSplits(const Settings& s, const std::vector<std::string>& keys) {
  eval::SplitSizes sizes;
  sizes.held_out = s.GetInt("held_out");
  sizes.test_per_fold = s.GetInt("test_per_fold");
  sizes.folds = s.GetInt("folds");
  return eval::MakeSplits(keys, s.GetU64("seed"), sizes);
}

std::vector<int> SelectedFolds(const Settings& s, const eval::SplitPlan& plan) {
  const int fold = s.GetInt("fold");
  if (fold < 0) {
    std::vector<int> all(plan.folds.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return all;
  }
  if (fold >= static_cast<int>(plan.folds.size())) throw ConfigError("fold out of range");
  return {fold};
}

std::vector<nn::CaseSequence> Pick(const CacheData& d, const std::vector<std::string>& keys) {
  std::vector<nn::CaseSequence> out;
  for (const auto& k : keys) out.push_back(*d.by_key.at(k));
  return out;
}

fs::path CheckpointDir(const Settings& s) {
  return s.Get("checkpoint_dir").empty() ? s.Require("output_dir") / "checkpoints"
                                         : fs::path(s.Get("checkpoint_dir"));
}

fs::path CheckpointPath(const fs::path& dir, const std::string& model, int fold, int run) {
  return dir / (model + "_fold" + std::to_string(fold) + "_run" + std::to_string(run) + ".wdnn");
}

void WriteSplits(const fs::path& path, const eval::SplitPlan& plan) {
  std::ofstream out = OpenOut(path);
  out << "case,role,fold\n";
  for (const auto& id : plan.held_out) out << id << ",held_out,\n";
  for (size_t f = 0; f < plan.folds.size(); ++f) {
    for (const auto& id : plan.folds[f].test) out << id << ",test," << f << '\n';
  }
}

}  // namespace

CommandPlan PlanFor(const std::string& command) {
  if (command == "parse") return {{"screenplay", "corpus", "case_meta"}, "output_dir"};
  if (command == "align") return {{"corpus", "captions", "audio_dir"}, "output_dir"};
  if (command == "featurize") return {{"corpus", "embeddings", "audio_dir", "visual_dir"}, "cache_dir"};
  if (command == "synth") return {{}, "output_dir"};
  if (command == "train") return {{"cache_dir"}, "output_dir"};
  if (command == "eval") return {{"cache_dir", "checkpoint_dir", "corpus", "pronouns"}, "output_dir"};
  if (command == "report") return {{"traces"}, "output_dir"};
  throw ConfigError("unknown command '" + command + "'");
}

void RunParse(const Settings& s, std::ostream& log) {
  const fs::path out_dir = s.Require("output_dir");
  if (s.Get("screenplay").empty() && s.Get("corpus").empty()) {
    throw ConfigError("parse needs a screenplay or an annotated corpus");
  }
  if (!s.Get("screenplay").empty()) {
    for (const auto& f : ListInputs(s.Get("screenplay"), ".txt")) {
      const std::string episode = f.stem().string();
      std::vector<corpus::SentenceUnit> units;
      try {
        units = corpus::ParseScreenplay(ReadText(f), episode);
      } catch (const ParseError& e) {
        throw Error(f.string() + ": " + e.what());
      }
      corpus::WriteInterchangeFile(out_dir / "corpus" / (episode + ".jsonl"), units);
      log << episode << ": " << units.size() << " sentences\n";
    }
  }
  if (!s.Get("corpus").empty()) {
    const auto units = corpus::ReadInterchangePath(s.Get("corpus"));
    auto cases = corpus::GroupCases(units);
    const auto meta = LoadCaseMeta(s);
    for (auto& c : cases) {
      auto it = meta.find(c.Key());
      if (it != meta.end()) c.crime_type = it->second;
    }
    std::ofstream out = OpenOut(out_dir / "stats.csv");
    corpus::WriteStatsCsv(out, corpus::CorpusStats(cases));
    log << "stats over " << cases.size() << " cases\n";
  }
}

void RunAlign(const Settings& s, std::ostream& log) {
  const fs::path out_dir = s.Require("output_dir");
  const fs::path captions = s.RequireExisting("captions");
  const double penalty = s.GetDouble("skip_penalty");
  const auto units = corpus::ReadInterchangePath(s.RequireExisting("corpus"));
  const auto episodes = corpus::SplitEpisodes(units);
  if (!fs::is_directory(captions) && episodes.size() > 1) {
    throw ConfigError("a single caption file needs a single-episode corpus");
  }
  for (const auto& ep : episodes) {
    const std::string& id = ep.front().episode_id;
    const fs::path srt = EpisodeFile(captions, id, ".srt");
    std::vector<corpus::CaptionCue> cues;
    try {
      cues = corpus::ParseSrt(ReadText(srt));
    } catch (const ParseError& e) {
      throw Error(srt.string() + ": " + e.what());
    }
    if (cues.empty()) throw Error(srt.string() + ": no caption cues");
    int64_t end_ms = cues.back().end_ms;
    if (!s.Get("audio_dir").empty()) {
      const fs::path wav = fs::path(s.Get("audio_dir")) / (id + ".wav");
      if (fs::exists(wav)) {
        end_ms = std::max<int64_t>(end_ms, static_cast<int64_t>(signal::ReadWavFile(wav).DurationMs()));
      }
    }
    const auto utterances = align::UtteranceTokens(ep);
    if (utterances.empty()) throw Error("episode " + id + " has no utterances to align");
    const align::Alignment a = align::DtwAlign(utterances, align::CueTokens(cues), penalty);
    const auto timed = align::AllocateTimestamps(ep, a, cues, 0, end_ms);
    corpus::WriteInterchangeFile(out_dir / "corpus" / (id + ".jsonl"), timed);
    std::ofstream csv = OpenOut(out_dir / "alignment" / (id + ".csv"));
    align::WriteAlignmentCsv(csv, a);
    log << id << ": " << a.pairs.size() << " matched, " << a.skipped_utterances.size()
        << " utterances and " << a.skipped_cues.size() << " cues skipped\n";
  }
}

void RunFeaturize(const Settings& s, std::ostream& log) {
  const fs::path cache_dir = s.Require("cache_dir");
  const fs::path audio_dir = s.RequireExisting("audio_dir");
  const fs::path visual_dir = s.RequireExisting("visual_dir");
  const int max_tokens = s.GetInt("max_tokens");
  const int visual_dim = s.GetInt("visual_dim");
  if (max_tokens <= 0) throw ConfigError("max_tokens must be positive");
  const auto units = corpus::ReadInterchangePath(s.RequireExisting("corpus"));
  const auto vocab = signal::BuildVocabFromFile(units, s.RequireExisting("embeddings"),
                                                s.GetInt("embedding_dim"), s.GetU64("seed"));
  fs::create_directories(cache_dir);
  {
    std::ofstream out = OpenOut(cache_dir / kVocabFile);
    signal::WriteEmbeddingTable(out, vocab);
  }
  const signal::MfccComputer mfcc;
  for (const auto& ep : corpus::SplitEpisodes(units)) {
    const std::string& id = ep.front().episode_id;
    const auto track =
        signal::Resample(signal::ReadWavFile(EpisodeFile(audio_dir, id, ".wav")));
    const auto visual =
        signal::VisualStore::ReadFile(EpisodeFile(visual_dir, id, ".txt"), visual_dim);
    const auto records = signal::FeaturizeEpisode(ep, vocab.vocab, track, visual, mfcc, max_tokens);
    signal::WriteFeatureCacheFile(cache_dir / (id + kCacheExtension), records);
    log << id << ": " << records.size() << " sentences featurized\n";
  }
  log << "vocabulary: " << vocab.vocab.size() << " entries\n";
}

void RunSynth(const Settings& s, std::ostream& log) {
  const fs::path out_dir = s.Require("output_dir");
  const synth::SynthSpec spec = s.Synth();
  const synth::SynthDataset ds = synth::Generate(spec);
  synth::WriteDataset(ds, out_dir);
  size_t sentences = 0;
  for (const auto& ep : ds.episodes) sentences += ep.units.size();
  log << "generated " << ds.episodes.size() << " episodes, " << sentences << " sentences\n";
}

void RunTrain(const Settings& s, std::ostream& log) {
  const fs::path out_dir = s.Require("output_dir");
  const std::string model_kind = s.Get("model");
  if (model_kind == "pro") throw ConfigError("the pronoun baseline has nothing to train");
  const CacheData data = LoadCacheData(s.Require("cache_dir"));
  const nn::ModelConfig config = ModelFor(s, data);
  const nn::TrainConfig train = s.Train();
  std::vector<std::string> keys;
  for (const auto& c : data.cases) keys.push_back(c.key);
  const eval::SplitPlan plan = PlanSplits(s, keys);
  WriteSplits(out_dir / "splits.csv", plan);
  const fs::path ckpt_dir = CheckpointDir(s);
  fs::create_directories(ckpt_dir);

  auto model = baselines::MakeLabeler(model_kind, config, &data.vocab.table);
  std::ofstream summary = OpenOut(out_dir / "train_summary.csv");
  summary << "fold,run,best_epoch,precision,recall,f1\n";
  char buf[160];
  for (int f : SelectedFolds(s, plan)) {
    const auto train_cases = Pick(data, plan.folds[f].train);
    const auto test_cases = Pick(data, plan.folds[f].test);
    const nn::TrainResult result = nn::Train(*model, train_cases, test_cases, train);
    {
      std::ofstream epochs = OpenOut(out_dir / ("epochs_fold" + std::to_string(f) + ".csv"));
      nn::WriteEpochCsv(epochs, result.epochs);
    }
    for (const auto& run : result.runs) {
      auto extra = train.ToKeyValues();
      extra["fold"] = std::to_string(f);
      extra["run"] = std::to_string(run.run);
      extra["best_epoch"] = std::to_string(run.best_epoch);
      nn::WriteCheckpointFile(CheckpointPath(ckpt_dir, model_kind, f, run.run),
                              baselines::SnapshotParams(*model, run.best_params, extra));
      std::snprintf(buf, sizeof buf, "%d,%d,%d,%.6f,%.6f,%.6f\n", f, run.run, run.best_epoch,
                    run.best.precision, run.best.recall, run.best.f1);
      summary << buf;
    }
    std::snprintf(buf, sizeof buf, "fold %d: mean best f1 %.4f over %zu runs\n", f,
                  result.mean_best_f1, result.runs.size());
    log << buf;
  }
}

void RunEval(const Settings& s, std::ostream& log) {
  const fs::path out_dir = s.Require("output_dir");
  const std::string model_kind = s.Get("model");
  std::vector<eval::EvalTrace> traces;
  if (model_kind == "pro") {
    const auto units = corpus::ReadInterchangePath(s.RequireExisting("corpus"));
    const baselines::PronounLexicon lexicon =
        s.Get("pronouns").empty() ? baselines::PronounLexicon()
                                  : baselines::PronounLexicon::ReadFile(s.Get("pronouns"));
    std::map<std::string, eval::PredictionTrace> by_key;
    std::vector<std::string> keys;
    for (const auto& c : corpus::GroupCases(units)) {
      eval::PredictionTrace t;
      t.case_id = c.Key();
      for (const auto* u : c.sentences) {
        const int label = baselines::ProLabel(u->tokens, lexicon);
        t.records.push_back({u->seq_index, static_cast<double>(label), label, u->gold_label});
      }
      keys.push_back(t.case_id);
      by_key[t.case_id] = std::move(t);
    }
    const eval::SplitPlan plan = PlanSplits(s, keys);
    for (int f : SelectedFolds(s, plan)) {
      for (const auto* part : {&plan.folds[f].test, &plan.held_out}) {
        for (const auto& k : *part) {
          traces.push_back({"pro", "T", part == &plan.held_out ? eval::kHeldOut : eval::kCrossValidation,
                            f, 0, by_key.at(k)});
        }
      }
    }
  } else {
    const CacheData data = LoadCacheData(s.Require("cache_dir"));
    const fs::path ckpt_dir = CheckpointDir(s);
    if (!fs::is_directory(ckpt_dir)) {
      throw ConfigError("checkpoint directory '" + ckpt_dir.string() + "' does not exist");
    }
    std::vector<std::string> keys;
    for (const auto& c : data.cases) keys.push_back(c.key);
    const eval::SplitPlan plan = PlanSplits(s, keys);
    const int runs = s.GetInt("runs");
    const auto held_out = Pick(data, plan.held_out);
    for (int f : SelectedFolds(s, plan)) {
      const auto test = Pick(data, plan.folds[f].test);
      for (int r = 0; r < runs; ++r) {
        const nn::Checkpoint cp =
            nn::ReadCheckpointFile(CheckpointPath(ckpt_dir, model_kind, f, r));
        const auto model = baselines::LoadLabeler(cp, &data.vocab.table);
        if (model->kind() != model_kind) throw Error("checkpoint holds a " + std::string(model->kind()) + " model");
        const std::string modalities = model->config().modalities.ToString();
        for (auto& t : nn::PredictTraces(*model, test)) {
          traces.push_back({model_kind, modalities, eval::kCrossValidation, f, r, std::move(t)});
        }
        for (auto& t : nn::PredictTraces(*model, held_out)) {
          traces.push_back({model_kind, modalities, eval::kHeldOut, f, r, std::move(t)});
        }
      }
    }
  }
  {
    std::ofstream out = OpenOut(out_dir / "traces.csv");
    eval::WriteTracesCsv(out, traces);
  }
  // The report is always rebuilt from the persisted traces.
  std::ifstream in(out_dir / "traces.csv", std::ios::binary);
  eval::WriteReport(out_dir, eval::ReadTracesCsv(in), s.GetInt("intervals"));
  log << "evaluated " << traces.size() << " traces\n";
}

void RunReport(const Settings& s, std::ostream& log) {
  std::ifstream in(s.RequireExisting("traces"), std::ios::binary);
  const auto traces = eval::ReadTracesCsv(in);
  eval::WriteReport(s.Require("output_dir"), traces, s.GetInt("intervals"));
  log << "report over " << traces.size() << " traces\n";
}

}  // namespace whodunit::cli
