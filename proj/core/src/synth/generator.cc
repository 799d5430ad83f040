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

#include "whodunit/synth/generator.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "whodunit/baselines/pronoun.h"
#include "whodunit/corpus/tokenize.h"
#include "whodunit/error.h"
#include "whodunit/random.h"
#include "whodunit/signal/mfcc.h"

namespace whodunit::synth {
namespace {

const std::vector<std::string>& Names() {
  static const std::vector<std::string> names = {
      "ada",    "boris",  "carla",  "dmitri", "elena",  "felix",   "greta",  "hector",
      "ingrid", "jonas",  "katja",  "lionel", "marta",  "nigel",   "olga",   "pavel",
      "quinn",  "rosa",   "stefan", "tamara", "ulrich", "vera",    "walter", "xenia",
      "yusuf",  "zelda",  "amos",   "bianca", "cyril",  "dora",    "emil",   "flora",
      "gideon", "hilde",  "ivo",    "jana",   "kurt",   "lotte",   "milo",   "nadia"};
  return names;
}

// Cue words rendered for c = 1 and c = 0; trigger words for g = 1 and g = 0.
constexpr double kEmbeddingScale = 0.3;
constexpr double kGroupSpread = 0.05;
const std::vector<std::string> kCueWords = {"knife", "blood", "motive", "alibi"};
const std::vector<std::string> kCalmWords = {"coffee", "weather", "lunch", "traffic"};
const std::vector<std::string> kTriggerWords = {"suddenly", "meanwhile", "later"};
const std::vector<std::string> kNeutralWords = {"quietly", "again", "still"};

constexpr corpus::CrimeType kCrimeTypes[] = {corpus::CrimeType::kMurder,
                                             corpus::CrimeType::kAccident,
                                             corpus::CrimeType::kSuicide,
                                             corpus::CrimeType::kOther};

std::string Filler(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "w%04d", i);
  return buf;
}

std::string Upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

const std::string& Pick(Rng& rng, const std::vector<std::string>& words) {
  return words[rng.UniformInt(words.size())];
}

struct Draft {
  corpus::SentenceUnit unit;
  SentenceLatent latent;
};

std::vector<Draft> GenerateCase(const SynthSpec& spec, Rng& rng, const std::string& episode_id,
                                int case_id, const std::vector<std::string>& pronouns) {
  const int t_len = rng.UniformRange(spec.min_sentences, spec.max_sentences);
  const int n_chars = rng.UniformRange(spec.min_characters, spec.max_characters);
  std::vector<std::string> pool = Names();
  rng.Shuffle(std::span<std::string>(pool));
  pool.resize(n_chars);
  const std::string& perpetrator = pool[0];
  const double p_cue = spec.CueProbability(t_len);
  const int k = spec.history_lag;

  std::vector<int> trigger(t_len);
  std::vector<Draft> out(t_len);
  for (int t = 0; t < t_len; ++t) {
    SentenceLatent& lat = out[t].latent;
    lat.position = t;
    lat.trigger = rng.Bernoulli(spec.trigger_rate);
    lat.cue = rng.Bernoulli(p_cue);
    trigger[t] = lat.trigger;
    lat.label = k == 0 ? lat.cue : (t >= k && lat.cue && trigger[t - k]);

    const bool text = spec.channels.text;
    const int shown_cue = text ? lat.cue : rng.Bernoulli(0.5);
    const int shown_trigger = text ? lat.trigger : rng.Bernoulli(spec.trigger_rate);
    const std::string& name =
        lat.label ? perpetrator : pool[1 + rng.UniformInt(pool.size() - 1)];

    std::vector<std::string> tokens;
    std::vector<corpus::TokenLabel> labels;
    auto push = [&](const std::string& tok, corpus::TokenLabel l) {
      tokens.push_back(tok);
      labels.push_back(l);
    };
    const int lead = rng.UniformRange(0, 2);
    const int tail = rng.UniformRange(1, 2);
    for (int i = 0; i < lead; ++i) push(Filler(rng.UniformInt(spec.vocab_size)), corpus::TokenLabel::kNone);
    push(name, lat.label ? corpus::TokenLabel::kPerpetrator : corpus::TokenLabel::kOther);
    push(Pick(rng, shown_cue ? kCueWords : kCalmWords), corpus::TokenLabel::kNone);
    push(Pick(rng, shown_trigger ? kTriggerWords : kNeutralWords), corpus::TokenLabel::kNone);
    for (int i = 0; i < tail; ++i) push(Filler(rng.UniformInt(spec.vocab_size)), corpus::TokenLabel::kNone);
    if (spec.pronoun_rate > 0 && rng.Bernoulli(spec.pronoun_rate)) {
      const size_t at = rng.UniformInt(tokens.size() + 1);
      tokens.insert(tokens.begin() + at, Pick(rng, pronouns));
      labels.insert(labels.begin() + at, corpus::TokenLabel::kNone);
    }

    corpus::SentenceUnit& u = out[t].unit;
    u.episode_id = episode_id;
    u.case_id = case_id;
    if (rng.Bernoulli(0.7)) {
      u.kind = corpus::SentenceKind::kUtterance;
      u.speaker = Upper(pool[rng.UniformInt(pool.size())]);
    } else {
      u.kind = corpus::SentenceKind::kSceneDescription;
    }
    u.tokens = std::move(tokens);
    u.token_labels = std::move(labels);
    u.gold_label = lat.label;
  }
  return out;
}

// Unit-norm direction shared by every episode; the two visual class means sit
// at -/+ separation/2 along it.
std::vector<double> VisualDirection(const SynthSpec& spec) {
  Rng rng(DeriveSeed(spec.seed, {0xF15}));
  std::vector<double> d(spec.visual_dim);
  double norm = 0;
  for (double& v : d) {
    v = rng.Normal();
    norm += v * v;
  }
  for (double& v : d) v /= std::sqrt(norm);
  return d;
}

void Render(const SynthSpec& spec, Rng& rng, const std::vector<double>& direction,
            SynthEpisode* ep) {
  const int rate = signal::kTargetSampleRate;
  const int64_t slot_samples = static_cast<int64_t>(spec.slot_ms) * rate / 1000;
  ep->audio.sample_rate = rate;
  ep->audio.samples.assign(static_cast<size_t>(slot_samples * ep->units.size()), 0.0f);
  ep->visual = signal::VisualStore(spec.visual_dim);
  std::vector<double> vec(spec.visual_dim);
  for (size_t i = 0; i < ep->units.size(); ++i) {
    corpus::SentenceUnit& u = ep->units[i];
    const int cue = ep->latents[i].cue;
    u.start_ms = static_cast<int64_t>(i) * spec.slot_ms;
    u.end_ms = static_cast<int64_t>(i + 1) * spec.slot_ms;

    const int audio_bit = spec.channels.audio ? cue : rng.Bernoulli(0.5);
    const double freq = audio_bit ? 880.0 : 440.0;
    for (int64_t s = 0; s < slot_samples; ++s) {
      const double x = 0.5 * std::sin(2 * std::numbers::pi * freq * s / rate) +
                       rng.Normal(0.0, spec.audio_noise);
      ep->audio.samples[i * slot_samples + s] = static_cast<float>(x);
    }

    const int visual_bit = spec.channels.visual ? cue : rng.Bernoulli(0.5);
    const double shift = (visual_bit ? 0.5 : -0.5) * spec.visual_separation;
    for (int d = 0; d < spec.visual_dim; ++d) vec[d] = shift * direction[d] + spec.visual_noise * rng.Normal();
    ep->visual.Add(*u.start_ms + spec.slot_ms / 2, vec);
  }
}

int ParseIntValue(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::logic_error&) {
    throw ConfigError("bad integer for " + key + ": '" + v + "'");
  }
}

double ParseDoubleValue(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::logic_error&) {
    throw ConfigError("bad number for " + key + ": '" + v + "'");
  }
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void SynthSpec::Validate() const {
  if (n_episodes <= 0) throw ConfigError("n_episodes must be positive");
  if (cases_per_episode != 1 && cases_per_episode != 2) {
    throw ConfigError("cases_per_episode must be 1 or 2");
  }
  if (min_sentences <= 0 || max_sentences < min_sentences) {
    throw ConfigError("sentence range must satisfy 0 < min <= max");
  }
  if (min_characters < 2 || max_characters < min_characters ||
      max_characters > static_cast<int>(Names().size())) {
    throw ConfigError("character range must satisfy 2 <= min <= max <= " +
                      std::to_string(Names().size()));
  }
  if (!(positive_rate > 0 && positive_rate < 1)) throw ConfigError("positive_rate must lie in (0, 1)");
  if (!(trigger_rate > 0 && trigger_rate <= 1)) throw ConfigError("trigger_rate must lie in (0, 1]");
  if (history_lag < 0 || history_lag >= min_sentences) {
    throw ConfigError("history_lag must lie in [0, min_sentences)");
  }
  if (vocab_size <= 0) throw ConfigError("vocab_size must be positive");
  if (!(pronoun_rate >= 0 && pronoun_rate <= 1)) throw ConfigError("pronoun_rate must lie in [0, 1]");
  if (!(audio_noise >= 0) || !(visual_separation >= 0) ||
      !(visual_noise >= 0)) {
    throw ConfigError("noise and separation must be non-negative");
  }
  if (visual_dim <= 0 || embedding_dim <= 0) throw ConfigError("dimensions must be positive");
  if (slot_ms < 50) throw ConfigError("slot_ms must be at least 50");
  for (int t = min_sentences; t <= max_sentences; ++t) {
    if (CueProbability(t) > 1.0) {
      throw ConfigError("positive_rate " + FormatDouble(positive_rate) +
                        " is unreachable with history_lag " + std::to_string(history_lag) +
                        " and " + std::to_string(t) + " sentences");
    }
  }
}

double SynthSpec::CueProbability(int sentences) const {
  if (history_lag == 0) return positive_rate;
  return positive_rate * sentences / (trigger_rate * (sentences - history_lag));
}

std::map<std::string, std::string> SynthSpec::ToKeyValues() const {
  return {
      {"n_episodes", std::to_string(n_episodes)},
      {"cases_per_episode", std::to_string(cases_per_episode)},
      {"min_sentences", std::to_string(min_sentences)},
      {"max_sentences", std::to_string(max_sentences)},
      {"min_characters", std::to_string(min_characters)},
      {"max_characters", std::to_string(max_characters)},
      {"positive_rate", FormatDouble(positive_rate)},
      {"channels", channels.ToString()},
      {"history_lag", std::to_string(history_lag)},
      {"trigger_rate", FormatDouble(trigger_rate)},
      {"vocab_size", std::to_string(vocab_size)},
      {"pronoun_rate", FormatDouble(pronoun_rate)},
      {"audio_noise", FormatDouble(audio_noise)},
      {"visual_separation", FormatDouble(visual_separation)},
      {"visual_noise", FormatDouble(visual_noise)},
      {"visual_dim", std::to_string(visual_dim)},
      {"slot_ms", std::to_string(slot_ms)},
      {"embedding_dim", std::to_string(embedding_dim)},
      {"seed", std::to_string(seed)},
  };
}

SynthSpec SynthSpec::FromKeyValues(const std::map<std::string, std::string>& kv) {
  SynthSpec s;
  const std::map<std::string, int*> ints = {
      {"n_episodes", &s.n_episodes},         {"cases_per_episode", &s.cases_per_episode},
      {"min_sentences", &s.min_sentences},   {"max_sentences", &s.max_sentences},
      {"min_characters", &s.min_characters}, {"max_characters", &s.max_characters},
      {"history_lag", &s.history_lag},       {"vocab_size", &s.vocab_size},
      {"visual_dim", &s.visual_dim},         {"slot_ms", &s.slot_ms},
      {"embedding_dim", &s.embedding_dim}};
  const std::map<std::string, double*> doubles = {{"positive_rate", &s.positive_rate},
                                                  {"trigger_rate", &s.trigger_rate},
                                                  {"pronoun_rate", &s.pronoun_rate},
                                                  {"audio_noise", &s.audio_noise},
                                                  {"visual_separation", &s.visual_separation},
                                                  {"visual_noise", &s.visual_noise}};
  for (const auto& [key, value] : kv) {
    if (auto i = ints.find(key); i != ints.end()) {
      *i->second = ParseIntValue(key, value);
    } else if (auto d = doubles.find(key); d != doubles.end()) {
      *d->second = ParseDoubleValue(key, value);
    } else if (key == "channels") {
      s.channels = nn::Modalities::Parse(value);
    } else if (key == "seed") {
      try {
        s.seed = std::stoull(value);
      } catch (const std::logic_error&) {
        throw ConfigError("bad seed '" + value + "'");
      }
    } else {
      throw ConfigError("unknown synth key '" + key + "'");
    }
  }
  return s;
}

SynthDataset Generate(const SynthSpec& spec) {
  spec.Validate();
  SynthDataset ds;
  ds.spec = spec;
  const baselines::PronounLexicon lexicon;
  const std::vector<std::string> pronouns(lexicon.words().begin(), lexicon.words().end());
  const std::vector<double> direction = VisualDirection(spec);

  for (int e = 0; e < spec.n_episodes; ++e) {
    Rng rng(DeriveSeed(spec.seed, {1, static_cast<uint64_t>(e)}));
    char id[32];
    std::snprintf(id, sizeof id, "synth%04d", e);
    std::vector<std::vector<Draft>> cases;
    for (int c = 0; c < spec.cases_per_episode; ++c) {
      cases.push_back(GenerateCase(spec, rng, id, c, pronouns));
      ds.case_meta[corpus::CaseKey(id, c)] = kCrimeTypes[rng.UniformInt(4)];
    }
    // Alternate scene blocks between the cases of the episode.
    SynthEpisode ep;
    std::vector<size_t> next(cases.size(), 0);
    size_t turn = 0;
    for (;;) {
      bool any = false;
      for (size_t c = 0; c < cases.size(); ++c) any |= next[c] < cases[c].size();
      if (!any) break;
      const size_t c = turn++ % cases.size();
      const size_t block = cases.size() == 1 ? cases[c].size() : rng.UniformRange(3, 8);
      for (size_t i = 0; i < block && next[c] < cases[c].size(); ++i) {
        Draft& d = cases[c][next[c]++];
        d.unit.seq_index = static_cast<int>(ep.units.size());
        ep.units.push_back(std::move(d.unit));
        ep.latents.push_back(d.latent);
      }
    }
    Render(spec, rng, direction, &ep);
    corpus::ValidateEpisode(ep.units);
    ds.episodes.push_back(std::move(ep));
  }

  // Words of one group share a centre, as related words do in pre-trained
  // embeddings; names, pronouns and fillers are independent draws.
  Rng rng(DeriveSeed(spec.seed, {2}));
  auto draw = [&](std::span<const double> centre, double stddev) {
    std::vector<double> v(spec.embedding_dim);
    for (int i = 0; i < spec.embedding_dim; ++i) v[i] = (centre.empty() ? 0.0 : centre[i]) + rng.Normal(0.0, stddev);
    return v;
  };
  for (const auto* group : {&kCueWords, &kCalmWords, &kTriggerWords, &kNeutralWords}) {
    const std::vector<double> centre = draw({}, kEmbeddingScale);
    for (const auto& w : *group) ds.embeddings[w] = draw(centre, kGroupSpread);
  }
  std::vector<std::string> words = Names();
  words.insert(words.end(), pronouns.begin(), pronouns.end());
  for (int i = 0; i < spec.vocab_size; ++i) words.push_back(Filler(i));
  for (const auto& w : words) ds.embeddings[w] = draw({}, kEmbeddingScale);
  return ds;
}

void WriteLatentsCsv(std::ostream& out, const SynthDataset& dataset) {
  for (const auto& [k, v] : dataset.spec.ToKeyValues()) out << "# " << k << " = " << v << '\n';
  out << "case,position,cue,trigger,label\n";
  for (const auto& ep : dataset.episodes) {
    for (size_t i = 0; i < ep.units.size(); ++i) {
      const SentenceLatent& l = ep.latents[i];
      out << corpus::CaseKey(ep.units[i].episode_id, *ep.units[i].case_id) << ',' << l.position
          << ',' << l.cue << ',' << l.trigger << ',' << l.label << '\n';
    }
  }
}

std::pair<SynthSpec, std::vector<LatentRow>> ReadLatentsCsv(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::vector<LatentRow> rows;
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const size_t eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("bad spec line", line_no);
      kv[std::string(corpus::Trim(line.substr(1, eq - 1)))] =
          std::string(corpus::Trim(line.substr(eq + 1)));
      continue;
    }
    if (!header) {
      if (line != "case,position,cue,trigger,label") throw ParseError("bad latents header", line_no);
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::vector<std::string> f;
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 5) throw ParseError("expected 5 fields", line_no);
    LatentRow r;
    r.case_key = f[0];
    try {
      r.latent.position = std::stoi(f[1]);
      r.latent.cue = std::stoi(f[2]);
      r.latent.trigger = std::stoi(f[3]);
      r.latent.label = std::stoi(f[4]);
    } catch (const std::logic_error&) {
      throw ParseError("bad latent value", line_no);
    }
    rows.push_back(std::move(r));
  }
  if (!header || kv.empty()) throw Error("not a synthetic latents file");
  return {SynthSpec::FromKeyValues(kv), std::move(rows)};
}

void WriteEmbeddings(std::ostream& out, const SynthDataset& dataset) {
  char buf[40];
  for (const auto& [token, vec] : dataset.embeddings) {
    out << token;
    for (double v : vec) {
      std::snprintf(buf, sizeof buf, " %.9g", v);
      out << buf;
    }
    out << '\n';
  }
}

SynthFeatures Featurize(const SynthDataset& dataset, int max_tokens, uint64_t seed) {
  std::vector<corpus::SentenceUnit> units;
  for (const auto& ep : dataset.episodes) units.insert(units.end(), ep.units.begin(), ep.units.end());
  std::stringstream embeddings;
  WriteEmbeddings(embeddings, dataset);
  SynthFeatures out{signal::BuildVocab(units, embeddings, dataset.spec.embedding_dim, seed), {}};
  const signal::MfccComputer mfcc;
  for (const auto& ep : dataset.episodes) {
    std::stringstream wav, visual;
    signal::WriteWav(wav, ep.audio);
    ep.visual.Write(visual);
    const auto track = signal::Resample(signal::ReadWav(wav));
    const auto store = signal::VisualStore::Read(visual, dataset.spec.visual_dim);
    auto records = signal::FeaturizeEpisode(ep.units, out.vocab.vocab, track, store, mfcc, max_tokens);
    signal::QuantizeToCachePrecision(records);
    for (auto& r : records) out.records.push_back(std::move(r));
  }
  return out;
}

void WriteDataset(const SynthDataset& dataset, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  for (const char* sub : {"corpus", "audio", "visual"}) fs::create_directories(dir / sub);
  auto open = [](const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    return out;
  };
  for (const auto& ep : dataset.episodes) {
    const std::string& id = ep.units.front().episode_id;
    corpus::WriteInterchangeFile(dir / "corpus" / (id + ".jsonl"), ep.units);
    signal::WriteWavFile(dir / "audio" / (id + ".wav"), ep.audio);
    ep.visual.WriteFile(dir / "visual" / (id + ".txt"));
  }
  {
    std::ofstream out = open(dir / "embeddings.txt");
    WriteEmbeddings(out, dataset);
  }
  {
    std::ofstream out = open(dir / "cases.jsonl");
    corpus::WriteCaseMeta(out, dataset.case_meta);
  }
  {
    std::ofstream out = open(dir / "latents.csv");
    WriteLatentsCsv(out, dataset);
  }
  {
    std::ofstream out = open(dir / "spec.txt");
    for (const auto& [k, v] : dataset.spec.ToKeyValues()) out << k << " = " << v << '\n';
  }
}

}  // namespace whodunit::synth
